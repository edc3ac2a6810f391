#include "pmrank/crp.hpp"

#include "pmrank/errors.hpp"
#include "pmrank/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <string>

namespace pmrank {

std::size_t CrpStats::k_sum() const noexcept {
    std::size_t total = 0;
    for (const auto& r : rounds) total += r.k;
    return total;
}

std::size_t CrpStats::max_window_multiplicity(std::size_t m) const {
    std::vector<std::size_t> hits(m + 2, 0);
    for (const auto& r : rounds)
        for (std::size_t j = r.window_first(); j <= r.window_last() && j <= m; ++j) ++hits[j];
    return *std::max_element(hits.begin(), hits.end());
}

namespace {

void check_start(const PolyMatrix& F, std::size_t theta, const IndexList& U) {
    if (theta < 1 || theta > F.rows() + 1)
        throw PreconditionError("theta = " + std::to_string(theta) + " is outside [1, m+1] with m = " +
                                std::to_string(F.rows()));
    std::vector<bool> seen(theta, false);
    for (std::size_t u : U) {
        if (u < 1 || u >= theta)
            throw PreconditionError("row " + std::to_string(u) + " of U is not below theta = " + std::to_string(theta), u);
        if (seen[u]) throw PreconditionError("row " + std::to_string(u) + " repeats in U", u);
        seen[u] = true;
    }
}

// Oracle cross-checks of the round contract run only at this size.
bool small_enough(const PolyMatrix& F) { return F.rows() <= 12 && F.cols() <= 12; }

std::int64_t nonnegative_degree_sum(const PolyMatrix& G) {
    std::int64_t d = 0;
    for (const Degree& x : rdeg(G))
        if (x.is_finite()) d += x.value();
    return d;
}

} // namespace

CrpResult column_rank_profile_rec(const PolyMatrix& F, std::size_t theta, const IndexList& U,
                                  const KernelOptions& opts) {
    check_start(F, theta, U);
    const std::size_t m = F.rows(), n = F.cols();
    const bool cross_check = opts.check_exactness && small_enough(F);
    if (cross_check && !U.empty() &&
        (oracle::rank_oracle(select_rows(F, U)) != U.size() ||
         oracle::rank_oracle(select_rows(F, iota_list(theta - 1))) != U.size()))
        throw PreconditionError("rows U are not a maximal independent subset of rows 1 .. theta-1");
    const std::uint64_t ops0 = field_op_count();
    CrpResult res;
    IndexList known = U;

    while (true) {
        const std::size_t k = known.size();
        if (k == n) {
            res.rows = known;
            res.rank_profile = iota_list(n);
            break;
        }
        if (k == 0) {
            std::size_t i = 0;
            while (i < m && F.row_is_zero(i)) ++i;
            if (i == m) break; // F = 0
            known = {i + 1};
            theta = i + 2;
            continue;
        }

        const std::size_t ell = std::min(k, m - theta + 1);
        IndexList V = known;
        for (std::size_t i = 0; i < ell; ++i) V.push_back(theta + i);
        PolyMatrix G = select_rows(F, V);
        Shift s = auto_shift(G);
        KernelRankResult kr = kernel_basis_rank_profile(G, s, opts);

        std::vector<bool> is_pivot(k + ell + 1, false);
        for (const auto& p : pivot_profile(kr.kernel, s)) {
            PMRANK_ENSURE(p.has_value(), "zero row in kernel basis");
            is_pivot[p->index] = true;
        }
        IndexList next;
        for (std::size_t i = 1; i <= k + ell; ++i) {
            if (is_pivot[i]) continue;
            next.push_back(i <= k ? known[i - 1] : theta + i - k - 1);
        }
        PMRANK_ENSURE(next.size() == kr.rank_profile.size(), "non-pivot count differs from the rank");
        if (cross_check) {
            const std::size_t prefix_rank = oracle::rank_oracle(select_rows(F, iota_list(theta + ell - 1)));
            PMRANK_ENSURE(oracle::rank_oracle(select_rows(F, next)) == next.size() && next.size() == prefix_rank,
                          "round did not keep a maximal independent set of rows");
        }

        res.stats.rounds.push_back({theta, k, ell, nonnegative_degree_sum(G), next.size()});
        res.stats.kernel.merge(kr.stats);
        known = std::move(next);
        theta += ell;
        if (theta > m) {
            res.rows = known;
            res.rank_profile = std::move(kr.rank_profile);
            break;
        }
    }
    res.rank = res.rows.size();
    res.stats.field_ops = field_op_count() - ops0;
    return res;
}

IndexList degree_sorting_permutation(const PolyMatrix& F) {
    auto rd = rdeg(F);
    IndexList perm = iota_list(F.rows());
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return rd[a - 1] < rd[b - 1]; });
    return perm;
}

CrpResult column_rank_profile(const PolyMatrix& F, const KernelOptions& opts) {
    const IndexList perm = degree_sorting_permutation(F);
    CrpResult res = column_rank_profile_rec(select_rows(F, perm), 1, {}, opts);
    PMRANK_ENSURE(res.stats.k_sum() <= 2 * F.rows(), "sum of round sizes exceeds 2m");
    if (res.rank > 0) {
        const auto cap = static_cast<std::size_t>(std::bit_width(res.rank)) + 1; // floor(log2 r) + 2
        PMRANK_ENSURE(res.stats.max_window_multiplicity(F.rows()) <= cap, "a row lies in too many round windows");
    }
    for (auto& i : res.rows) i = perm[i - 1];
    std::sort(res.rows.begin(), res.rows.end());
    return res;
}

CrpResult nonsingular_submatrix(const PolyMatrix& F, std::uint64_t seed, const KernelOptions& opts) {
    CrpResult res = column_rank_profile(F, opts);
    if (res.rank == 0) return res;
    const PolyMatrix S = submatrix(F, res.rows, res.rank_profile);
    std::mt19937_64 rng(seed);
    const Coeff p = F.field().modulus();
    for (int attempt = 0; attempt < 8; ++attempt) {
        if (const_det(evaluate(S, static_cast<Coeff>(rng() % p))) != 0) return res;
    }
    // Small fields can make every evaluation vanish; fall back to exact rank.
    PMRANK_ENSURE(oracle::rank_oracle(S) == res.rank, "F[I, J] is singular");
    return res;
}

} // namespace pmrank
