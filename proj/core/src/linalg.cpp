#include "calf/linalg.hpp"

#include <algorithm>

namespace calf {

bool is_zero(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; });
}

RatVec vec_mat(const RatVec& v, const RatMat& m) {
    if (m.size() != v.size())
        throw InputError("vector/matrix dimension mismatch");
    std::size_t cols = m.empty() ? 0 : m[0].size();
    RatVec out(cols, Rational(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        for (std::size_t j = 0; j < cols; ++j)
            out[j] += v[i] * m[i][j];
    }
    return out;
}

Rational dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size())
        throw InputError("dot product dimension mismatch");
    Rational out(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        out += a[i] * b[i];
    return out;
}

RatMat transpose(const RatMat& m) {
    std::size_t rows = m.size();
    std::size_t cols = rows == 0 ? 0 : m[0].size();
    RatMat out(cols, RatVec(rows, Rational(0)));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            out[j][i] = m[i][j];
    return out;
}

RatMat identity(std::size_t n) {
    RatMat out(n, RatVec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        out[i][i] = 1;
    return out;
}

std::size_t rank(RatMat m) {
    SpanBasis basis;
    std::size_t r = 0;
    for (auto& row : m)
        if (basis.add(row))
            ++r;
    return r;
}

std::optional<RatVec> solve_coords(const RatMat& rows, const RatVec& target) {
    for (const RatVec& row : rows)
        if (row.size() != target.size())
            throw InputError("row length does not match target length");
    const std::size_t n = rows.size();
    const std::size_t cols = target.size();

    // Eliminate on [rows^T | target^T]: solutions of rows^T x = target^T
    // are exactly the coefficient vectors.
    RatMat aug(cols, RatVec(n + 1, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            aug[j][i] = rows[i][j];
    for (std::size_t j = 0; j < cols; ++j)
        aug[j][n] = target[j];

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < cols; ++c) {
        std::size_t p = r;
        while (p < cols && aug[p][c] == 0)
            ++p;
        if (p == cols)
            continue;
        std::swap(aug[r], aug[p]);
        Rational inv = aug[r][c];
        for (std::size_t k = c; k <= n; ++k)
            aug[r][k] /= inv;
        for (std::size_t i = 0; i < cols; ++i) {
            if (i == r || aug[i][c] == 0)
                continue;
            Rational f = aug[i][c];
            for (std::size_t k = c; k <= n; ++k)
                aug[i][k] -= f * aug[r][k];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < cols; ++i)
        if (aug[i][n] != 0)
            return std::nullopt;
    RatVec l(n, Rational(0));
    for (std::size_t i = 0; i < r; ++i)
        l[pivot_col[i]] = aug[i][n];
    return l;
}

bool in_span(const RatMat& rows, const RatVec& target) {
    return solve_coords(rows, target).has_value();
}

RatMat nullspace(const RatMat& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    RatMat a = m;

    std::vector<std::ptrdiff_t> pivot_of_col(cols, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[r], a[p]);
        Rational inv = a[r][c];
        for (std::size_t k = c; k < cols; ++k)
            a[r][k] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            Rational f = a[i][c];
            for (std::size_t k = c; k < cols; ++k)
                a[i][k] -= f * a[r][k];
        }
        pivot_of_col[c] = static_cast<std::ptrdiff_t>(r);
        ++r;
    }

    RatMat basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (pivot_of_col[free] >= 0)
            continue;
        RatVec x(cols, Rational(0));
        x[free] = 1;
        for (std::size_t c = 0; c < cols; ++c)
            if (pivot_of_col[c] >= 0)
                x[c] = -a[static_cast<std::size_t>(pivot_of_col[c])][free];
        basis.push_back(std::move(x));
    }
    return basis;
}

RatVec SpanBasis::reduce(RatVec v) const {
    for (std::size_t i = 0; i < echelon_.size(); ++i) {
        if (v[pivots_[i]] == 0)
            continue;
        Rational f = v[pivots_[i]];
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] -= f * echelon_[i][j];
    }
    return v;
}

bool SpanBasis::add(const RatVec& v) {
    RatVec red = reduce(v);
    std::size_t pivot = red.size();
    for (std::size_t j = 0; j < red.size(); ++j)
        if (red[j] != 0) {
            pivot = j;
            break;
        }
    if (pivot == red.size())
        return false;
    Rational inv = red[pivot];
    for (auto& x : red)
        x /= inv;
    // Keep rows ordered by pivot so reduce() stays one pass.
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < pivot)
        ++at;
    echelon_.insert(echelon_.begin() + static_cast<std::ptrdiff_t>(at), std::move(red));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), pivot);
    return true;
}

bool SpanBasis::contains(const RatVec& v) const {
    return is_zero(reduce(v));
}

}  // namespace calf
