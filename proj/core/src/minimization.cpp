#include "calf/minimization.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace calf {

namespace {

// Quotient by an explicit state -> class-representative assignment where
// the representative is the least state id of the class. Classes are
// numbered by ascending representative.
Dfa quotient_by(const Dfa& d, const std::vector<State>& rep_of) {
    std::vector<State> reps;
    std::map<State, State> class_of_rep;
    for (State q = 0; q < d.num_states; ++q)
        if (rep_of[q] == q) {
            class_of_rep[q] = static_cast<State>(reps.size());
            reps.push_back(q);
        }
    Dfa out;
    out.alphabet = d.alphabet;
    out.num_states = static_cast<std::uint32_t>(reps.size());
    out.initial = class_of_rep.at(rep_of[d.initial]);
    out.accepting.resize(out.num_states);
    out.delta.resize(static_cast<std::size_t>(out.num_states) * d.alphabet.size());
    for (State c = 0; c < out.num_states; ++c) {
        State rep = reps[c];
        out.accepting[c] = d.accepting[rep];
        for (Symbol a = 0; a < d.alphabet.size(); ++a)
            out.set_next(c, a, class_of_rep.at(rep_of[d.next(rep, a)]));
    }
    out.validate();
    return out;
}

std::vector<State> reps_from_classes(const Dfa& d, const std::vector<std::vector<State>>& classes) {
    std::vector<State> rep_of(d.num_states);
    for (const auto& cls : classes) {
        State rep = *std::min_element(cls.begin(), cls.end());
        for (State q : cls)
            rep_of[q] = rep;
    }
    return rep_of;
}

}  // namespace

std::pair<Dfa, AccessSet> reachable_part(const Dfa& d) {
    d.validate();
    constexpr State unseen = static_cast<State>(-1);
    std::vector<State> relabel(d.num_states, unseen);
    std::vector<State> order;
    std::vector<Word> access;
    relabel[d.initial] = 0;
    order.push_back(d.initial);
    access.emplace_back();
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Symbol a = 0; a < d.alphabet.size(); ++a) {
            State to = d.next(order[i], a);
            if (relabel[to] == unseen) {
                relabel[to] = static_cast<State>(order.size());
                order.push_back(to);
                access.push_back(access[i].append(a));
            }
        }
    }
    Dfa r;
    r.alphabet = d.alphabet;
    r.num_states = static_cast<std::uint32_t>(order.size());
    r.initial = 0;
    r.accepting.resize(r.num_states);
    r.delta.resize(static_cast<std::size_t>(r.num_states) * d.alphabet.size());
    for (State fresh = 0; fresh < r.num_states; ++fresh) {
        r.accepting[fresh] = d.accepting[order[fresh]];
        for (Symbol a = 0; a < d.alphabet.size(); ++a)
            r.set_next(fresh, a, relabel[d.next(order[fresh], a)]);
    }
    return {std::move(r), AccessSet{std::move(access)}};
}

std::pair<Dfa, SeparatorSet> moore_merge(const Dfa& d) {
    d.validate();
    std::vector<Word> suffixes;
    suffixes.emplace_back();

    auto signature = [&](State q) {
        std::vector<bool> sig;
        sig.reserve(suffixes.size());
        for (const Word& e : suffixes)
            sig.push_back(eval_from(d, q, e));
        return sig;
    };

    for (;;) {
        std::vector<std::vector<bool>> sigs;
        sigs.reserve(d.num_states);
        for (State q = 0; q < d.num_states; ++q)
            sigs.push_back(signature(q));

        std::optional<Word> defect;
        for (State q1 = 0; q1 < d.num_states && !defect; ++q1)
            for (State q2 = q1 + 1; q2 < d.num_states && !defect; ++q2) {
                if (sigs[q1] != sigs[q2])
                    continue;
                for (Symbol a = 0; a < d.alphabet.size() && !defect; ++a)
                    for (std::size_t ei = 0; ei < suffixes.size() && !defect; ++ei)
                        if (eval_from(d, d.next(q1, a), suffixes[ei]) !=
                            eval_from(d, d.next(q2, a), suffixes[ei]))
                            defect = Word{}.append(a).concat(suffixes[ei]);
            }
        if (!defect) {
            std::map<std::vector<bool>, std::vector<State>> classes;
            for (State q = 0; q < d.num_states; ++q)
                classes[sigs[q]].push_back(q);
            std::vector<std::vector<State>> grouped;
            for (auto& [sig, cls] : classes)
                grouped.push_back(cls);
            return {quotient_by(d, reps_from_classes(d, grouped)),
                    SeparatorSet{std::move(suffixes)}};
        }
        suffixes.push_back(*defect);
    }
}

int SplittingTree::leaf_of(State q) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].is_leaf &&
            std::find(nodes[i].states.begin(), nodes[i].states.end(), q) != nodes[i].states.end())
            return static_cast<int>(i);
    throw InputError("state not present in the splitting tree");
}

std::vector<Word> SplittingTree::identifiers(State q) const {
    std::vector<Word> up;
    int node = nodes[leaf_of(q)].parent;
    while (node >= 0) {
        up.push_back(nodes[node].label);
        node = nodes[node].parent;
    }
    return {up.rbegin(), up.rend()};
}

std::string SplittingTree::dump(const Alphabet& alphabet) const {
    std::ostringstream out;
    auto emit = [&](auto&& self, int node, int indent) -> void {
        for (int i = 0; i < indent; ++i)
            out << "  ";
        if (nodes[node].is_leaf) {
            out << '[';
            for (std::size_t i = 0; i < nodes[node].states.size(); ++i) {
                if (i > 0)
                    out << ", ";
                out << 'q' << nodes[node].states[i];
            }
            out << "]\n";
            return;
        }
        out << "? " << format_word(alphabet, nodes[node].label) << '\n';
        self(self, nodes[node].left, indent + 1);
        self(self, nodes[node].right, indent + 1);
    };
    emit(emit, root, 0);
    return out.str();
}

namespace {

bool under(const SplittingTree& tree, int node, int ancestor_child) {
    while (node >= 0) {
        if (node == ancestor_child)
            return true;
        node = tree.nodes[node].parent;
    }
    return false;
}

int tree_depth(const SplittingTree& tree, int node) {
    int depth = 0;
    while (tree.nodes[node].parent >= 0) {
        node = tree.nodes[node].parent;
        ++depth;
    }
    return depth;
}

int tree_lca(const SplittingTree& tree, int a, int b) {
    int da = tree_depth(tree, a), db = tree_depth(tree, b);
    while (da > db) {
        a = tree.nodes[a].parent;
        --da;
    }
    while (db > da) {
        b = tree.nodes[b].parent;
        --db;
    }
    while (a != b) {
        a = tree.nodes[a].parent;
        b = tree.nodes[b].parent;
    }
    return a;
}

int tree_lca_all(const SplittingTree& tree, const std::vector<int>& leaves) {
    int acc = leaves.front();
    for (std::size_t i = 1; i < leaves.size(); ++i)
        acc = tree_lca(tree, acc, leaves[i]);
    return acc;
}

// Replaces leaf `at` by a subtree that mirrors, prefixed with symbol a, the
// shape of the existing tree over the successor leaves. Returns nothing;
// grows tree.nodes.
void split_leaf_by_successors(SplittingTree& tree, int at, Symbol a,
                              std::map<int, std::vector<State>>& groups) {
    // Recursive build over the set of distinct successor leaves.
    auto build = [&](auto&& self, int node, std::vector<int> targets, int parent) -> int {
        if (targets.size() == 1) {
            int leaf = node >= 0 ? node : static_cast<int>(tree.nodes.size());
            if (node < 0)
                tree.nodes.push_back(SplittingTree::Node{});
            auto& n = tree.nodes[leaf];
            n.is_leaf = true;
            n.states = groups.at(targets[0]);
            n.left = n.right = -1;
            n.parent = parent;
            return leaf;
        }
        int lca = tree_lca_all(tree, targets);
        std::vector<int> left_targets, right_targets;
        for (int t : targets)
            (under(tree, t, tree.nodes[lca].left) ? left_targets : right_targets).push_back(t);
        int self_id = node >= 0 ? node : static_cast<int>(tree.nodes.size());
        if (node < 0)
            tree.nodes.push_back(SplittingTree::Node{});
        Word label = Word{}.append(a).concat(tree.nodes[lca].label);
        int left = self(self, -1, std::move(left_targets), self_id);
        int right = self(self, -1, std::move(right_targets), self_id);
        auto& n = tree.nodes[self_id];
        n.is_leaf = false;
        n.label = label;
        n.left = left;
        n.right = right;
        n.parent = parent;
        n.states.clear();
        return self_id;
    };
    std::vector<int> targets;
    for (const auto& [t, states] : groups)
        targets.push_back(t);
    build(build, at, std::move(targets), tree.nodes[at].parent);
}

}  // namespace

std::pair<Dfa, SplittingTree> splitting_tree_minimize(const Dfa& d) {
    d.validate();
    SplittingTree tree;
    tree.nodes.push_back(SplittingTree::Node{});
    for (State q = 0; q < d.num_states; ++q)
        tree.nodes[0].states.push_back(q);

    auto leaf_index = [&]() {
        std::vector<int> idx(d.num_states);
        for (std::size_t i = 0; i < tree.nodes.size(); ++i)
            if (tree.nodes[i].is_leaf)
                for (State q : tree.nodes[i].states)
                    idx[q] = static_cast<int>(i);
        return idx;
    };

    for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> idx = leaf_index();
        for (std::size_t i = 0; i < tree.nodes.size() && !changed; ++i) {
            if (!tree.nodes[i].is_leaf || tree.nodes[i].states.size() < 2)
                continue;
            const std::vector<State>& block = tree.nodes[i].states;

            // Acceptance disagreement: split on eps, accepting states left.
            bool acc0 = d.accepting[block.front()];
            bool mixed = false;
            for (State q : block)
                if (d.accepting[q] != acc0)
                    mixed = true;
            if (mixed) {
                std::vector<State> ones, zeros;
                for (State q : block)
                    (d.accepting[q] ? ones : zeros).push_back(q);
                int left = static_cast<int>(tree.nodes.size());
                tree.nodes.push_back(SplittingTree::Node{});
                int right = static_cast<int>(tree.nodes.size());
                tree.nodes.push_back(SplittingTree::Node{});
                tree.nodes[left].states = std::move(ones);
                tree.nodes[left].parent = static_cast<int>(i);
                tree.nodes[right].states = std::move(zeros);
                tree.nodes[right].parent = static_cast<int>(i);
                auto& n = tree.nodes[i];
                n.is_leaf = false;
                n.label = Word{};
                n.left = left;
                n.right = right;
                n.states.clear();
                changed = true;
                break;
            }

            // Successor disagreement under some symbol: split the whole
            // block into one part per successor leaf at once.
            for (Symbol a = 0; a < d.alphabet.size() && !changed; ++a) {
                std::map<int, std::vector<State>> groups;
                for (State q : block)
                    groups[idx[d.next(q, a)]].push_back(q);
                if (groups.size() < 2)
                    continue;
                split_leaf_by_successors(tree, static_cast<int>(i), a, groups);
                changed = true;
            }
        }
    }

    std::vector<std::vector<State>> classes;
    for (const auto& node : tree.nodes)
        if (node.is_leaf && !node.states.empty())
            classes.push_back(node.states);
    Dfa q = quotient_by(d, reps_from_classes(d, classes));
    return {std::move(q), std::move(tree)};
}

Dfa minimize(const Dfa& d) {
    return moore_merge(reachable_part(d).first).first;
}

}  // namespace calf
