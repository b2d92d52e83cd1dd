// linalg.hpp -- exact rational linear algebra for the weighted machinery.
//
// Everything is dense and small; Gaussian elimination with first-nonzero
// pivoting keeps results deterministic. No tolerances anywhere.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "calf/rational.hpp"

namespace calf {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

bool is_zero(const RatVec& v);

RatVec vec_mat(const RatVec& v, const RatMat& m);   // row vector times matrix
Rational dot(const RatVec& a, const RatVec& b);
RatMat transpose(const RatMat& m);
RatMat identity(std::size_t n);

std::size_t rank(RatMat m);

// Coefficients l with sum_i l[i] * rows[i] = target, or nullopt when the
// target is outside the row span. Free variables are fixed at zero, so the
// result is deterministic.
std::optional<RatVec> solve_coords(const RatMat& rows, const RatVec& target);

bool in_span(const RatMat& rows, const RatVec& target);

// Basis of {x : m x = 0}, as rows. Used as an independent check against
// the transpose-closedness route to consistency.
RatMat nullspace(const RatMat& m);

// Incremental row space with exact membership tests; add() returns false
// (and leaves the basis unchanged) when the vector is already spanned.
class SpanBasis {
public:
    bool add(const RatVec& v);
    bool contains(const RatVec& v) const;
    std::size_t dimension() const { return echelon_.size(); }

private:
    RatVec reduce(RatVec v) const;
    RatMat echelon_;                    // rows with strictly increasing pivots
    std::vector<std::size_t> pivots_;
};

}  // namespace calf
