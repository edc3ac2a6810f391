#pragma once

#include "pmrank/poly_matrix.hpp"

#include <cstdint>
#include <random>

// Classical reference algorithms used to cross-check the fast ones. Nothing
// here calls into order_basis, kernel_rank or crp, and the shifted pivot
// bookkeeping is reimplemented locally rather than taken from poly_matrix.
namespace pmrank::oracle {

struct MsResult {
    PolyMatrix reduced;   // W: nonzero rows have pairwise distinct s-pivot indices
    PolyMatrix transform; // T: unimodular, T * F = W (empty 0x0 when not tracked)
    std::size_t steps = 0;
};

/// Mulders-Storjohann: repeatedly cancel the leading term of one row of a
/// colliding pair (same s-pivot index) against the one of smaller pivot
/// degree. The lowest-index collision pair is processed first.
MsResult ms_weak_popov(const PolyMatrix& F, const Shift& s, bool track_transform = true);
MsResult ms_weak_popov(const PolyMatrix& F);

std::size_t rank_oracle(const PolyMatrix& F);
/// Greedy column scan: keep column j iff it raises the rank.
IndexList crp_oracle(const PolyMatrix& F);
/// Greedy row scan: the row rank profile.
IndexList row_rank_profile_oracle(const PolyMatrix& F);
/// Rows of T aligned with the zero rows of W: a kernel basis, not minimal in general.
PolyMatrix kernel_oracle(const PolyMatrix& F);
/// Row basis of the module generated by K put in s-ordered weak Popov form.
PolyMatrix reduce_to_weak_popov(const PolyMatrix& K, const Shift& s);

/// Fraction-free elimination with exact divisions. Square, at most 6 x 6.
Poly det_small(const PolyMatrix& F);
/// True iff the maximal minors of K have gcd 1. Needs rows <= cols, rows <= 4,
/// cols <= 12; throws CapabilityError beyond that.
bool minors_gcd_is_one(const PolyMatrix& K);

struct InstanceSpec {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t rank = 0;
    std::size_t degree = 0; // bound on the degree of each factor's entries
    std::uint64_t modulus = 2;
    std::uint64_t seed = 0;
};

/// Uniform polynomial of degree <= max_degree.
Poly random_poly(const FieldSpec& f, std::size_t max_degree, std::mt19937_64& rng);

/// F = S R with S (m x r), R (r x n) uniform of degree <= d, redrawn until
/// rank(F) = r (at most 64 attempts, then InternalError). Deterministic per seed.
PolyMatrix random_instance(const InstanceSpec& spec);

} // namespace pmrank::oracle
