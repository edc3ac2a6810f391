#pragma once

#include "pmrank/kernel_rank.hpp"
#include "pmrank/poly_matrix.hpp"

#include <cstdint>
#include <vector>

namespace pmrank {

/// One row-incorporation round: rows U (|U| = k) joined with rows
/// theta .. theta+ell-1, all indices 1-based into the matrix being scanned.
struct CrpRound {
    std::size_t theta;
    std::size_t k;
    std::size_t ell;
    std::int64_t degree_sum; // sum of nonnegative row degrees of the round's matrix
    std::size_t rank_after;  // |U'|
    /// The contiguous window {theta - k, ..., theta + ell - 1}.
    std::size_t window_first() const noexcept { return theta - k; }
    std::size_t window_last() const noexcept { return theta + ell - 1; }
};

struct CrpStats {
    std::vector<CrpRound> rounds;
    std::uint64_t field_ops = 0;
    KernelStats kernel; // merged over all rounds

    std::size_t k_sum() const noexcept;
    /// Largest number of round windows containing a single row.
    std::size_t max_window_multiplicity(std::size_t m) const;
};

struct CrpResult {
    IndexList rows;         // I: r distinct 1-based row indices
    IndexList rank_profile; // J: strictly increasing 1-based column indices
    std::size_t rank = 0;
    CrpStats stats;
};

/// Rank profile search that incorporates rows theta, theta+1, ... into a
/// known set U of independent rows. U must be a duplicate-free subset of
/// 1 .. theta-1 with rank(F[U]) = rank(F[1 .. theta-1]) = |U|, and theta must
/// lie in [1, m+1]; otherwise PreconditionError (the rank condition is only
/// checked with check_exactness on inputs up to 12 x 12). Returned rows are
/// in discovery order.
CrpResult column_rank_profile_rec(const PolyMatrix& F, std::size_t theta, const IndexList& U,
                                  const KernelOptions& opts = {});

/// Stably sorts rows by nondecreasing degree (zero rows first), runs the
/// search from theta = 1, and maps the rows back to the input order (sorted).
CrpResult column_rank_profile(const PolyMatrix& F, const KernelOptions& opts = {});

/// column_rank_profile plus a certificate that F[I, J] is nonsingular:
/// random evaluations first, exact rank as fallback. Throws InternalError if
/// the certificate fails.
CrpResult nonsingular_submatrix(const PolyMatrix& F, std::uint64_t seed = 0x5eed,
                                const KernelOptions& opts = {});

/// Ordering used by column_rank_profile: a stable sort by row degree,
/// returned as a 1-based permutation (position -> original row).
IndexList degree_sorting_permutation(const PolyMatrix& F);

} // namespace pmrank
