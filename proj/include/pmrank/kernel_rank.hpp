#pragma once

#include "pmrank/poly_matrix.hpp"

#include <cstdint>
#include <vector>

namespace pmrank {

/// One pass through the approximant (relation) branch.
struct RelationStep {
    std::size_t depth;
    std::size_t rows;          // m
    std::size_t cols;          // n
    std::int64_t mu;           // shift decrement
    std::size_t order;         // tau
    std::size_t residual_rows; // rows of A with r-degree >= tau, before the zero-row sweep
    std::size_t outside_kernel; // rows of A with A_i F != 0
    std::size_t rank;          // rank of F, known once the recursion returns
};

/// One pass through the column-splitting branch.
struct SplitStep {
    std::size_t depth;
    std::size_t rows;
    std::size_t cols;
    std::size_t left_kernel_rows; // rows of K1
    Shift residual_shift;         // rdeg_s(K1)
};

/// Steps are listed in the order the recursion enters them.
struct KernelStats {
    std::size_t max_depth = 0;
    std::size_t calls = 0;
    std::uint64_t field_ops = 0;
    std::vector<RelationStep> relation_steps;
    std::vector<SplitStep> split_steps;

    void merge(const KernelStats& o);
};

struct KernelRankResult {
    PolyMatrix kernel;    // (m - r) x m, s-ordered weak Popov, kernel * F = 0
    IndexList rank_profile; // strictly increasing, 1-based
    KernelStats stats;
};

struct KernelOptions {
    /// Re-multiply kernel * F and check the weak Popov form at every level.
    bool check_exactness =
#ifdef NDEBUG
        false;
#else
        true;
#endif
};

/// Left kernel basis in s-ordered weak Popov form together with the column
/// rank profile of F. Requires s >= 0 and s_i >= rdeg(F_i) on nonzero rows;
/// otherwise throws PreconditionError naming the first offending row.
KernelRankResult kernel_basis_rank_profile(const PolyMatrix& F, const Shift& s,
                                           const KernelOptions& opts = {});

/// The column-splitting branch taken at the top level (m >= 2, m < 2n, F != 0).
KernelRankResult kernel_split_columns(const PolyMatrix& F, const Shift& s,
                                      const KernelOptions& opts = {});

/// The approximant branch taken at the top level (m >= 2, n <= m/2, F != 0).
KernelRankResult kernel_via_relations(const PolyMatrix& F, const Shift& s,
                                      const KernelOptions& opts = {});

/// Zero rows of F get shift 0; other rows get rdeg(F_i).
Shift auto_shift(const PolyMatrix& F);

/// The order used by the approximant branch: max(1, ceil(2 sum(r) / (m - n))).
std::size_t relation_order(std::int64_t shift_sum, std::size_t m, std::size_t n);

} // namespace pmrank
