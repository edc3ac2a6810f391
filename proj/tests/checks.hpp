#pragma once

#include "pmrank/crp.hpp"
#include "pmrank/kernel_rank.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace checks {

using namespace pmrank;

/// Outcome of one battery: how many cases ran and which failed.
struct Report {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
    void expect(bool ok, const std::string& what);
    bool passed() const noexcept { return failures == 0 && cases > 0; }
    std::string summary() const;
};

struct Instance {
    std::uint64_t p;
    std::size_t m, n, r, d;
    std::uint64_t seed;
    PolyMatrix F;
};

/// Seeded instances: p in {2, 3, 97}, m, n <= 12, d <= 6, every rank from 0
/// to min(m, n) represented for each sampled shape.
std::vector<Instance> equivalence_instances(std::size_t target, std::uint64_t seed);

Report golden_running_example();

struct EquivalenceOutcome {
    Report equivalence;   // fast vs oracle
    Report certification; // kernel basis certificate on the small subset
    Report bounds;        // internal bounds from the recursion records
};
EquivalenceOutcome oracle_equivalence(const std::vector<Instance>& instances);

// Property batteries, each over `cases` random instances.
Report predictable_degree(std::size_t cases, std::uint64_t seed);
Report leading_matrix_product(std::size_t cases, std::uint64_t seed);
Report predictable_pivot(std::size_t cases, std::uint64_t seed);
Report weak_popov_product(std::size_t cases, std::uint64_t seed);
Report independent_rows_from_pivots(std::size_t cases, std::uint64_t seed);
Report kernel_degree_sum(std::size_t cases, std::uint64_t seed);
Report kernel_column_selection(std::size_t cases, std::uint64_t seed);
Report crp_row_selection(std::size_t cases, std::uint64_t seed);

Report order_basis_bruteforce(std::size_t cases, std::uint64_t seed);
Report order_basis_variants(std::size_t cases, std::uint64_t seed);

struct RankSweep {
    std::vector<std::size_t> ranks;
    std::vector<std::uint64_t> field_ops;
    double ratio = 0;        // ops at the largest rank / ops at the smallest
    bool monotone = false;   // adjacent pairs nondecreasing up to the allowance
};
RankSweep rank_sweep(std::size_t m, std::size_t n, std::size_t d, std::uint64_t p, const std::vector<std::size_t>& ranks,
                     std::uint64_t seed, double allowance);

} // namespace checks
