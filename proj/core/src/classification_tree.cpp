#include "calf/classification_tree.hpp"

#include <algorithm>
#include <sstream>

namespace calf {

ClassificationTree::ClassificationTree(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
    nodes_.push_back(Node{});
    nodes_[0].members.push_back(Word{});
    words_.push_back(Word{});
    word_set_.insert(Word{});
}

int ClassificationTree::sift(const Word& w, CachedMembership& oracle) const {
    std::optional<PhaseScope<CachedMembership>> phase;
    if (oracle.phase().empty())
        phase.emplace(oracle, "fill");
    int node = root_;
    while (!nodes_[node].is_leaf) {
        bool one = oracle.query(w.concat(nodes_[node].label));
        node = one ? nodes_[node].left : nodes_[node].right;
    }
    return node;
}

bool ClassificationTree::add_word(const Word& w, CachedMembership& oracle) {
    if (!word_set_.insert(w).second)
        return false;
    words_.push_back(w);
    int leaf = sift(w, oracle);
    nodes_[leaf].members.push_back(w);
    return true;
}

void ClassificationTree::split(int leaf, const Word& v, CachedMembership& oracle) {
    if (leaf < 0 || leaf >= static_cast<int>(nodes_.size()) || !nodes_[leaf].is_leaf)
        throw PreconditionError("split target is not a leaf");
    std::optional<PhaseScope<CachedMembership>> phase;
    if (oracle.phase().empty())
        phase.emplace(oracle, "fix");

    // Partitioning by one query per member re-sifts the members: everything
    // below the new node is decided by v alone.
    std::vector<Word> ones, zeros;
    for (const Word& m : nodes_[leaf].members)
        (oracle.query(m.concat(v)) ? ones : zeros).push_back(m);
    if (nodes_[leaf].members.size() >= 2 && (ones.empty() || zeros.empty()))
        throw PreconditionError("discriminator '" + format_word(alphabet_, v) +
                                "' does not split the leaf");

    int left = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{});
    int right = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{});
    nodes_[left].members = std::move(ones);
    nodes_[left].parent = leaf;
    nodes_[right].members = std::move(zeros);
    nodes_[right].parent = leaf;

    Node& parent = nodes_[leaf];
    parent.is_leaf = false;
    parent.label = v;
    parent.left = left;
    parent.right = right;
    parent.members.clear();
}

int ClassificationTree::leaf_of(const Word& s) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].is_leaf &&
            std::find(nodes_[i].members.begin(), nodes_[i].members.end(), s) !=
                nodes_[i].members.end())
            return static_cast<int>(i);
    throw InputError("word '" + format_word(alphabet_, s) + "' is not in the tree");
}

std::size_t ClassificationTree::nonempty_leaf_count() const {
    std::size_t n = 0;
    for (const Node& node : nodes_)
        if (node.is_leaf && !node.members.empty())
            ++n;
    return n;
}

int ClassificationTree::depth(int node) const {
    int d = 0;
    while (nodes_[node].parent >= 0) {
        node = nodes_[node].parent;
        ++d;
    }
    return d;
}

int ClassificationTree::lca(int node_a, int node_b) const {
    int da = depth(node_a), db = depth(node_b);
    while (da > db) {
        node_a = nodes_[node_a].parent;
        --da;
    }
    while (db > da) {
        node_b = nodes_[node_b].parent;
        --db;
    }
    while (node_a != node_b) {
        node_a = nodes_[node_a].parent;
        node_b = nodes_[node_b].parent;
    }
    return node_a;
}

std::optional<ClassificationTree::Defect> ClassificationTree::find_defect(
    CachedMembership& oracle) const {
    // Scan order: eps, then S.A in (S order, alphabet order).
    std::vector<Word> extensions;
    extensions.push_back(Word{});
    for (const Word& s : words_)
        for (Symbol a = 0; a < alphabet_.size(); ++a)
            extensions.push_back(s.append(a));

    // Closedness: a word sifting into an empty leaf has no state to go to.
    for (const Word& t : extensions) {
        int leaf = sift(t, oracle);
        if (nodes_[leaf].members.empty()) {
            Defect d;
            d.kind = Defect::Kind::closedness;
            d.word = t;
            return d;
        }
    }

    // Output consistency: every word must agree on acceptance with the
    // first member of its leaf (eps would be the discriminator). S comes
    // first so member pairs are reported before extension pairs.
    std::vector<Word> out_scan = words_;
    out_scan.insert(out_scan.end(), extensions.begin(), extensions.end());
    for (const Word& u : out_scan) {
        int leaf = sift(u, oracle);
        const Word& rep = nodes_[leaf].members.front();
        if (rep == u)
            continue;
        if (oracle.query(rep) != oracle.query(u)) {
            Defect d;
            d.kind = Defect::Kind::consistency;
            d.s1 = rep;
            d.s2 = u;
            d.discriminator = Word{};
            return d;
        }
    }

    // Transition consistency: prefixes sharing a leaf must keep sharing
    // after any symbol; the LCA label of the diverging leaves, prefixed
    // with that symbol, separates them.
    for (std::size_t i = 0; i < words_.size(); ++i) {
        for (std::size_t j = i + 1; j < words_.size(); ++j) {
            if (leaf_of(words_[i]) != leaf_of(words_[j]))
                continue;
            for (Symbol a = 0; a < alphabet_.size(); ++a) {
                int li = sift(words_[i].append(a), oracle);
                int lj = sift(words_[j].append(a), oracle);
                if (li == lj)
                    continue;
                Defect d;
                d.kind = Defect::Kind::consistency;
                d.s1 = words_[i];
                d.s2 = words_[j];
                d.discriminator = Word{}.append(a).concat(nodes_[lca(li, lj)].label);
                return d;
            }
        }
    }
    return std::nullopt;
}

Hypothesis ClassificationTree::hypothesis(CachedMembership& oracle) const {
    if (auto defect = find_defect(oracle)) {
        if (defect->kind == Defect::Kind::closedness)
            throw PreconditionError("tree has a closedness defect at '" +
                                    format_word(alphabet_, defect->word) + "'");
        throw PreconditionError("tree has a consistency defect between '" +
                                format_word(alphabet_, defect->s1) + "' and '" +
                                format_word(alphabet_, defect->s2) + "'");
    }

    std::vector<int> leaves;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].is_leaf && !nodes_[i].members.empty())
            leaves.push_back(static_cast<int>(i));
    // Deterministic state order: by the S index of the representative.
    auto s_index = [&](const Word& w) {
        return std::find(words_.begin(), words_.end(), w) - words_.begin();
    };
    std::sort(leaves.begin(), leaves.end(), [&](int a, int b) {
        return s_index(nodes_[a].members.front()) < s_index(nodes_[b].members.front());
    });
    std::map<int, State> state_of;
    for (std::size_t q = 0; q < leaves.size(); ++q)
        state_of[leaves[q]] = static_cast<State>(q);

    Hypothesis h;
    h.dfa.alphabet = alphabet_;
    h.dfa.num_states = static_cast<std::uint32_t>(leaves.size());
    h.dfa.accepting.resize(h.dfa.num_states);
    h.dfa.delta.resize(static_cast<std::size_t>(h.dfa.num_states) * alphabet_.size());
    h.dfa.initial = state_of.at(sift(Word{}, oracle));
    for (std::size_t q = 0; q < leaves.size(); ++q) {
        const Word& rep = nodes_[leaves[q]].members.front();
        h.representatives.push_back(rep);
        h.dfa.accepting[q] = oracle.query(rep);
        for (Symbol a = 0; a < alphabet_.size(); ++a)
            h.dfa.set_next(static_cast<State>(q), a, state_of.at(sift(rep.append(a), oracle)));
    }
    h.dfa.validate();
    return h;
}

std::string ClassificationTree::dump() const {
    std::ostringstream out;
    auto emit = [&](auto&& self, int node, int indent) -> void {
        for (int i = 0; i < indent; ++i)
            out << "  ";
        if (nodes_[node].is_leaf) {
            out << '[';
            for (std::size_t i = 0; i < nodes_[node].members.size(); ++i) {
                if (i > 0)
                    out << ", ";
                out << format_word(alphabet_, nodes_[node].members[i]);
            }
            out << "]\n";
            return;
        }
        out << "? " << format_word(alphabet_, nodes_[node].label) << '\n';
        self(self, nodes_[node].left, indent + 1);
        self(self, nodes_[node].right, indent + 1);
    };
    emit(emit, root_, 0);
    return out.str();
}

}  // namespace calf
