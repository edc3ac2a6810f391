#include "checks.hpp"

#include "support.hpp"

#include "pmrank/errors.hpp"
#include "pmrank/order_basis.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>

namespace checks {

void Report::expect(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
}

std::string Report::summary() const {
    std::ostringstream s;
    s << name << ": " << cases << " cases, " << failures << " failures";
    if (failures) s << " (first: " << first_failure << ")";
    return s.str();
}

namespace {

constexpr std::array<std::uint64_t, 3> moduli{2, 3, 97};

KernelOptions checked() {
    KernelOptions o;
    o.check_exactness = true;
    return o;
}

std::string describe(const Instance& in) {
    std::ostringstream s;
    s << "p=" << in.p << " m=" << in.m << " n=" << in.n << " r=" << in.r << " d=" << in.d << " seed=" << in.seed;
    return s.str();
}

std::string describe(std::uint64_t p, std::size_t t) {
    return "p=" + std::to_string(p) + " case " + std::to_string(t);
}

PolyMatrix without_zero_rows(PolyMatrix Q, std::size_t k, std::mt19937_64& rng) {
    for (std::size_t i = 0; i < Q.rows(); ++i)
        if (Q.row_is_zero(i)) Q(i, rng() % k) = Poly::constant(Q.field(), 1);
    return Q;
}

// shared setup of the four reduced-form batteries
struct ProductCase {
    Shift s, t;
    PolyMatrix P, Q;
};

ProductCase product_case(std::uint64_t p, std::mt19937_64& rng) {
    const FieldSpec f(p);
    const std::size_t n = 1 + rng() % 6, k = 1 + rng() % n, q = 1 + rng() % 5;
    Shift s = testing::random_shift(n, -4, 6, rng);
    PolyMatrix P = testing::random_weak_popov(f, k, s, 3, rng);
    Shift t = to_shift(rdeg_shifted(P, s));
    PolyMatrix Q = without_zero_rows(testing::random_matrix(f, q, k, 3, rng), k, rng);
    return {std::move(s), std::move(t), std::move(P), std::move(Q)};
}

Shift dominating_shift(const PolyMatrix& F, std::mt19937_64& rng) {
    Shift s = auto_shift(F);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += static_cast<std::int64_t>(rng() % 4);
    return s;
}

} // namespace

std::vector<Instance> equivalence_instances(std::size_t target, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Instance> out;
    std::size_t shape = 0;
    while (out.size() < target) {
        // min(m, n) cycles through 1..12 so every rank up to 12 occurs
        const std::uint64_t p = moduli[shape % moduli.size()];
        const std::size_t small = 1 + shape++ % 12, large = small + rng() % (13 - small);
        const bool tall = rng() % 2;
        const std::size_t m = tall ? large : small, n = tall ? small : large;
        for (std::size_t r = 0; r <= std::min(m, n); ++r) {
            const std::size_t d = rng() % 7;
            const std::uint64_t s = rng();
            out.push_back({p, m, n, r, d, s, oracle::random_instance({m, n, r, d, p, s})});
        }
    }
    return out;
}

Report golden_running_example() {
    Report rep{"golden running example"};
    const PolyMatrix F = testing::running_example();
    const Shift s = testing::example_shift();
    using testing::mat;

    rep.expect(rdeg(F) == std::vector<Degree>{8, 5, 2, 8, 4}, "rdeg(F) = (8,5,2,8,4)");
    rep.expect(oracle::rank_oracle(F) == 3, "oracle rank 3");
    const CrpResult crp = column_rank_profile(F, checked());
    rep.expect(crp.rank == 3 && crp.rank_profile == IndexList{1, 2, 3}, "Algorithm 2: rank 3, J = (1,2,3)");
    rep.expect(oracle::rank_oracle(submatrix(F, crp.rows, crp.rank_profile)) == 3, "F[I,J] nonsingular");

    const KernelRankResult K = kernel_basis_rank_profile(F, s, checked());
    rep.expect(K.rank_profile == IndexList{1, 2, 3}, "Algorithm 1: J = (1,2,3)");
    rep.expect(pivot_profile(K.kernel, s) == PivotProfile{Pivot{4, 0}, Pivot{5, 1}},
               "s-pivot index (4,5), degrees (0,1)");
    rep.expect(pivot_profile(oracle::reduce_to_weak_popov(oracle::kernel_oracle(F), s), s) ==
                   PivotProfile{Pivot{4, 0}, Pivot{5, 1}},
               "oracle kernel reduced under s has the same pivot profile");
    const auto d = rdeg_shifted(K.kernel, s);
    rep.expect(K.kernel.rows() == 2 && d[0].value() + d[1].value() == 13 && s.sum() == 27,
               "sum rdeg_s(K) = 13 <= 27");
    rep.expect(K.kernel == mat(2, 2, 5, "0 ; 0 0 0 1 ; 0 0 0 1 0 1 ; 1 ; 1 0 0 1|0 ; 1 ; 1 0 1 ; 0 ; 1 1"),
               "K equals the printed basis");

    const PolyMatrix K0 = oracle::reduce_to_weak_popov(
        kernel_basis_rank_profile(F, auto_shift(F), checked()).kernel, Shift::zeros(5));
    rep.expect(pivot_profile(K0, Shift::zeros(5)) == PivotProfile{Pivot{3, 2}, Pivot{5, 4}},
               "unshifted pivot index (3,5), degrees (2,4)");

    const KernelRankResult left = kernel_basis_rank_profile(select_cols(F, {1, 2}), s, checked());
    rep.expect(!left.stats.relation_steps.empty() && left.stats.relation_steps[0].order == 18, "first order tau = 18");
    const PolyMatrix F2 = matmul(left.kernel, select_cols(F, {3, 4, 5}));
    rep.expect(F2 == mat(2, 3, 3, "1 1 0 0 1 1 ; 1 1 ; 0|1 0 0 0 0 0 0 0 1 ; 1 0 0 0 1 ; 0|1 0 0 0 1 ; 1 ; 0"),
               "residual F2 equals the printed matrix");
    rep.expect(to_shift(rdeg_shifted(left.kernel, s)) == Shift{5, 8, 4}, "residual shift (5,8,4)");
    const KernelRankResult split = kernel_split_columns(F, s, checked());
    rep.expect(!split.stats.split_steps.empty() && split.stats.split_steps[0].residual_shift == Shift{5, 8, 4},
               "recorded residual shift (5,8,4)");
    return rep;
}

EquivalenceOutcome oracle_equivalence(const std::vector<Instance>& instances) {
    EquivalenceOutcome out{{"fast vs oracle"}, {"kernel certification"}, {"internal bounds"}};
    for (const Instance& in : instances) {
        const std::string tag = describe(in);
        const PolyMatrix& F = in.F;
        const IndexList J_oracle = oracle::crp_oracle(F);
        const std::size_t rank = oracle::rank_oracle(F);
        try {
            const CrpResult crp = column_rank_profile(F, checked());
            out.equivalence.expect(crp.rank_profile == J_oracle, "Algorithm 2 J, " + tag);
            out.bounds.expect(crp.stats.k_sum() <= 2 * in.m, "sum k <= 2m, " + tag);
            if (rank)
                out.bounds.expect(crp.stats.max_window_multiplicity(in.m) <=
                                      static_cast<std::size_t>(std::bit_width(rank)) + 1,
                                  "window multiplicity, " + tag);

            const Shift s = auto_shift(F);
            const KernelRankResult K = kernel_basis_rank_profile(F, s, checked());
            out.equivalence.expect(K.rank_profile == J_oracle, "Algorithm 1 J, " + tag);
            out.equivalence.expect(in.m - K.kernel.rows() == rank, "m - rows(K) = rank, " + tag);

            KernelStats all = K.stats;
            all.merge(crp.stats.kernel);
            for (const RelationStep& st : all.relation_steps) {
                out.bounds.expect(4 * st.residual_rows <= 3 * st.rows + 3, "residual <= ceil(3m/4), " + tag);
                out.bounds.expect(st.outside_kernel <= st.rank + (st.rows - st.cols) / 2,
                                  "outside kernel <= r + floor((m-n)/2), " + tag);
            }

            if (in.m <= 8 && in.m - in.r <= 4) {
                out.certification.expect(matmul(K.kernel, F).is_zero(), "K F = 0, " + tag);
                out.certification.expect(is_ordered_weak_popov(K.kernel, s), "weak Popov, " + tag);
                out.certification.expect(oracle::minors_gcd_is_one(K.kernel), "minors gcd 1, " + tag);
            }
        } catch (const InternalError& e) {
            out.bounds.expect(false, std::string(e.what()) + ", " + tag);
        }
    }
    return out;
}

Report predictable_degree(std::size_t cases, std::uint64_t seed) {
    Report rep{"predictable degree"};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < cases; ++t) {
        const auto c = product_case(moduli[t % 3], rng);
        rep.expect(rdeg_shifted(matmul(c.Q, c.P), c.s) == rdeg_shifted(c.Q, c.t), describe(moduli[t % 3], t));
    }
    return rep;
}

Report leading_matrix_product(std::size_t cases, std::uint64_t seed) {
    Report rep{"leading matrix of a product"};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < cases; ++t) {
        const auto c = product_case(moduli[t % 3], rng);
        rep.expect(leading_matrix(matmul(c.Q, c.P), c.s) ==
                       const_matmul(leading_matrix(c.Q, c.t), leading_matrix(c.P, c.s)),
                   describe(moduli[t % 3], t));
    }
    return rep;
}

Report predictable_pivot(std::size_t cases, std::uint64_t seed) {
    Report rep{"predictable pivot"};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < cases; ++t) {
        const auto c = product_case(moduli[t % 3], rng);
        const auto pq = pivot_profile(c.Q, c.t), pp = pivot_profile(c.P, c.s);
        PivotProfile expected;
        for (const auto& a : pq) expected.push_back(Pivot{pp[a->index - 1]->index, pp[a->index - 1]->degree + a->degree});
        rep.expect(pivot_profile(matmul(c.Q, c.P), c.s) == expected, describe(moduli[t % 3], t));
    }
    return rep;
}

Report weak_popov_product(std::size_t cases, std::uint64_t seed) {
    Report rep{"weak Popov product closure"};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < cases; ++t) {
        const std::uint64_t p = moduli[t % 3];
        const auto c = product_case(p, rng);
        const PolyMatrix Q = testing::random_weak_popov(FieldSpec(p), 1 + rng() % c.P.rows(), c.t, 3, rng);
        rep.expect(is_ordered_weak_popov(Q, c.t) && is_ordered_weak_popov(matmul(Q, c.P), c.s), describe(p, t));
    }
    return rep;
}

Report independent_rows_from_pivots(std::size_t cases, std::uint64_t seed) {
    Report rep{"independent rows from non-pivot indices"};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < cases; ++t) {
        const std::uint64_t p = moduli[t % 3];
        const std::size_t m = 1 + rng() % 9, n = 1 + rng() % 9, r = rng() % (std::min(m, n) + 1);
        const PolyMatrix F = testing::random_rank(p, m, n, r, rng() % 4, rng);
        const Shift s = dominating_shift(F, rng);
        const KernelRankResult K = kernel_basis_rank_profile(F, s);
        std::vector<bool> pivot(m + 1, false);
        for (const auto& piv : pivot_profile(K.kernel, s)) pivot[piv->index] = true;
        IndexList rest;
        for (std::size_t i = 1; i <= m; ++i)
            if (!pivot[i]) rest.push_back(i);
        rep.expect(rest.size() == m - K.kernel.rows() && rest.size() == r &&
                       oracle::rank_oracle(select_rows(F, rest)) == r,
                   describe(p, t));
    }
    return rep;
}

Report kernel_degree_sum(std::size_t cases, std::uint64_t seed) {
    Report rep{"kernel degree sum bounded by shift sum"};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < cases; ++t) {
        const std::uint64_t p = moduli[t % 3];
        const std::size_t m = 1 + rng() % 9, n = 1 + rng() % 9, r = rng() % (std::min(m, n) + 1);
        const PolyMatrix F = testing::random_rank(p, m, n, r, rng() % 4, rng);
        const Shift s = dominating_shift(F, rng);
        const KernelRankResult K = kernel_basis_rank_profile(F, s);
        std::int64_t total = 0;
        for (const Degree& d : rdeg_shifted(K.kernel, s)) total += d.value();
        rep.expect(total <= s.sum(), describe(p, t));
    }
    return rep;
}

Report kernel_column_selection(std::size_t cases, std::uint64_t seed) {
    Report rep{"kernel unchanged by a rank-preserving column selection"};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < cases; ++t) {
        const std::uint64_t p = moduli[t % 3];
        const std::size_t m = 1 + rng() % 7, n = 2 + rng() % 7, r = 1 + rng() % std::min(m, n);
        const PolyMatrix F = testing::random_rank(p, m, n, r, rng() % 3, rng);
        // random columns, grown until they reach rank r
        IndexList order = iota_list(n);
        std::shuffle(order.begin(), order.end(), rng);
        IndexList V;
        for (std::size_t j : order) {
            V.push_back(j);
            std::sort(V.begin(), V.end());
            if (oracle::rank_oracle(select_cols(F, V)) == r) break;
        }
        const PolyMatrix FV = select_cols(F, V);
        const PolyMatrix KV = oracle::kernel_oracle(FV);
        const PolyMatrix K = oracle::kernel_oracle(F);
        rep.expect(KV.rows() == K.rows() && matmul(KV, F).is_zero() && matmul(K, FV).is_zero(), describe(p, t));
    }
    return rep;
}

Report crp_row_selection(std::size_t cases, std::uint64_t seed) {
    Report rep{"column rank profile unchanged by a full-rank row selection"};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < cases; ++t) {
        const std::uint64_t p = moduli[t % 3];
        const std::size_t m = 1 + rng() % 8, n = 1 + rng() % 8, r = 1 + rng() % std::min(m, n);
        const PolyMatrix F = testing::random_rank(p, m, n, r, rng() % 3, rng);
        IndexList order = iota_list(m);
        std::shuffle(order.begin(), order.end(), rng);
        IndexList I;
        for (std::size_t i : order) {
            I.push_back(i);
            std::sort(I.begin(), I.end());
            if (oracle::rank_oracle(select_rows(F, I)) == r) break;
        }
        rep.expect(oracle::crp_oracle(select_rows(F, I)) == oracle::crp_oracle(F), describe(p, t));
    }
    return rep;
}

Report order_basis_bruteforce(std::size_t cases, std::uint64_t seed) {
    Report rep{"order basis against the brute-force index"};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < cases; ++t) {
        const std::uint64_t p = moduli[t % 3];
        const std::size_t m = 1 + rng() % 5, n = 1 + rng() % 4, tau = 1 + rng() % 6;
        const PolyMatrix F = testing::random_matrix(FieldSpec(p), m, n, rng() % 4, rng);
        const Shift s = testing::random_shift(m, -3, 4, rng);
        const PolyMatrix A = approximant_basis(F, tau, s).basis;
        const bool member = truncate(matmul(A, F), tau).is_zero();
        const bool minimal = is_ordered_weak_popov(A, s) &&
                             testing::pivot_degree_sum(A, s) ==
                                 static_cast<std::int64_t>(testing::approximant_index_bruteforce(F, tau));
        rep.expect(member && minimal, describe(p, t));
    }
    return rep;
}

Report order_basis_variants(std::size_t cases, std::uint64_t seed) {
    Report rep{"iterative and divide-and-conquer order bases"};
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < cases; ++t) {
        const std::uint64_t p = moduli[t % 3];
        const std::size_t m = 1 + rng() % 6, n = 1 + rng() % 4, tau = 1 + rng() % 48;
        const PolyMatrix F = testing::random_matrix(FieldSpec(p), m, n, rng() % 5, rng);
        const Shift s = testing::random_shift(m, 0, 12, rng);
        rep.expect(pivot_profile(approximant_basis(F, tau, s).basis, s) ==
                       pivot_profile(approximant_basis_dac(F, tau, s).basis, s),
                   describe(p, t));
    }
    return rep;
}

RankSweep rank_sweep(std::size_t m, std::size_t n, std::size_t d, std::uint64_t p, const std::vector<std::size_t>& ranks,
                     std::uint64_t seed, double allowance) {
    RankSweep out;
    out.ranks = ranks;
    KernelOptions fast;
    fast.check_exactness = false;
    for (std::size_t r : ranks) {
        const PolyMatrix F = oracle::random_instance({m, n, r, d, p, seed + r});
        out.field_ops.push_back(column_rank_profile(F, fast).stats.field_ops);
    }
    out.ratio = static_cast<double>(out.field_ops.back()) / static_cast<double>(std::max<std::uint64_t>(1, out.field_ops.front()));
    out.monotone = true;
    for (std::size_t i = 1; i < out.field_ops.size(); ++i)
        if (static_cast<double>(out.field_ops[i]) < (1.0 - allowance) * static_cast<double>(out.field_ops[i - 1]))
            out.monotone = false;
    return out;
}

} // namespace checks
