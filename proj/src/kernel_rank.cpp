#include "pmrank/kernel_rank.hpp"

#include "pmrank/errors.hpp"
#include "pmrank/order_basis.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace pmrank {

void KernelStats::merge(const KernelStats& o) {
    max_depth = std::max(max_depth, o.max_depth);
    calls += o.calls;
    field_ops += o.field_ops;
    relation_steps.insert(relation_steps.end(), o.relation_steps.begin(), o.relation_steps.end());
    split_steps.insert(split_steps.end(), o.split_steps.begin(), o.split_steps.end());
}

Shift auto_shift(const PolyMatrix& F) {
    auto rd = rdeg(F);
    std::vector<std::int64_t> s(rd.size(), 0);
    for (std::size_t i = 0; i < rd.size(); ++i)
        if (rd[i].is_finite()) s[i] = rd[i].value();
    return Shift(std::move(s));
}

std::size_t relation_order(std::int64_t shift_sum, std::size_t m, std::size_t n) {
    if (n >= m) throw UsageError("relation_order: requires n < m");
    const auto k = static_cast<std::int64_t>(m - n);
    const std::int64_t num = 2 * std::max<std::int64_t>(shift_sum, 0);
    return static_cast<std::size_t>(std::max<std::int64_t>(1, (num + k - 1) / k));
}

namespace {

struct Partial {
    PolyMatrix kernel;
    IndexList rank_profile;
};

struct Context {
    KernelOptions opts;
    KernelStats stats;
};

void check_shift(const PolyMatrix& F, const Shift& s) {
    if (s.size() != F.rows())
        throw UsageError("kernel_basis_rank_profile: shift has length " + std::to_string(s.size()) +
                         ", matrix has " + std::to_string(F.rows()) + " rows");
    auto rd = rdeg(F);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0)
            throw PreconditionError("shift entry " + std::to_string(s[i]) + " at row " + std::to_string(i + 1) +
                                        " is negative",
                                    i + 1);
        if (rd[i].is_finite() && s[i] < rd[i].value())
            throw PreconditionError("shift entry " + std::to_string(s[i]) + " at row " + std::to_string(i + 1) +
                                        " is below the row degree " + std::to_string(rd[i].value()),
                                    i + 1);
    }
}

bool shift_dominates(const PolyMatrix& F, const Shift& s) {
    auto rd = rdeg(F);
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] < 0 || (rd[i].is_finite() && s[i] < rd[i].value())) return false;
    return true;
}

// Rows of `top` and `bottom` interleaved according to `from_bottom`.
PolyMatrix interleave_rows(const PolyMatrix& top, const PolyMatrix& bottom, const std::vector<bool>& from_bottom) {
    PolyMatrix out(top.field(), top.rows() + bottom.rows(), top.cols());
    std::size_t it = 0, ib = 0;
    for (std::size_t r = 0; r < from_bottom.size(); ++r) {
        const PolyMatrix& src = from_bottom[r] ? bottom : top;
        const std::size_t i = from_bottom[r] ? ib++ : it++;
        for (std::size_t j = 0; j < top.cols(); ++j) out(r, j) = src(i, j);
    }
    return out;
}

Partial dispatch(const PolyMatrix& F, const Shift& s, std::size_t depth, Context& ctx);

Partial split_columns(const PolyMatrix& F, const Shift& s, std::size_t depth, Context& ctx) {
    const std::size_t n = F.cols();
    const std::size_t half = n / 2;
    const std::size_t slot = ctx.stats.split_steps.size();
    ctx.stats.split_steps.push_back({depth, F.rows(), n, 0, {}});
    Partial left = dispatch(select_cols(F, iota_list(half)), s, depth + 1, ctx);

    PolyMatrix residual = matmul(left.kernel, select_cols(F, iota_list(n - half, half + 1)));
    Shift t = to_shift(rdeg_shifted(left.kernel, s));
    ctx.stats.split_steps[slot].left_kernel_rows = left.kernel.rows();
    ctx.stats.split_steps[slot].residual_shift = t;

    Partial right = dispatch(residual, t, depth + 1, ctx);

    IndexList J = std::move(left.rank_profile);
    for (std::size_t j : right.rank_profile) J.push_back(j + half);
    return {matmul(right.kernel, left.kernel), std::move(J)};
}

Partial via_relations(const PolyMatrix& F, const Shift& s, std::size_t depth, Context& ctx) {
    const std::size_t m = F.rows(), n = F.cols();

    // Largest decrement keeping r >= rdeg(F) and r >= 0.
    auto rd = rdeg(F);
    std::int64_t mu = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < m; ++i) mu = std::min(mu, rd[i].is_finite() ? s[i] - rd[i].value() : s[i]);
    std::vector<std::int64_t> rv(s.begin(), s.end());
    for (auto& v : rv) v -= mu;
    const Shift r(std::move(rv));
    const std::size_t tau = relation_order(r.sum(), m, n);

    PolyMatrix A = approximant_basis_dac(F, tau, r).basis;
    auto adeg = rdeg_shifted(A, r);

    IndexList in_kernel, rest; // 1-based rows of A
    for (std::size_t i = 0; i < m; ++i) (adeg[i] < Degree(static_cast<std::int64_t>(tau)) ? in_kernel : rest).push_back(i + 1);
    const std::size_t residual_rows = rest.size();
    PMRANK_ENSURE(4 * residual_rows <= 3 * m + 3, "residual has " + std::to_string(residual_rows) +
                                                      " rows, more than ceil(3m/4) with m = " + std::to_string(m));

    PolyMatrix G = divide_exact_xpow(matmul(select_rows(A, rest), F), tau);
    IndexList nonzero_rows, kept;
    for (std::size_t i = 0; i < G.rows(); ++i) {
        if (G.row_is_zero(i))
            in_kernel.push_back(rest[i]);
        else {
            nonzero_rows.push_back(i + 1);
            kept.push_back(rest[i]);
        }
    }
    std::sort(in_kernel.begin(), in_kernel.end());
    G = select_rows(G, nonzero_rows);

    PolyMatrix A_rest = select_rows(A, kept);
    std::vector<std::int64_t> tv;
    for (std::size_t i : kept) tv.push_back(adeg[i - 1].value() - static_cast<std::int64_t>(tau));
    const std::size_t slot = ctx.stats.relation_steps.size();
    ctx.stats.relation_steps.push_back({depth, m, n, mu, tau, residual_rows, kept.size(), 0});
    Partial sub = dispatch(G, Shift(std::move(tv)), depth + 1, ctx);

    const std::size_t rank = sub.rank_profile.size();
    ctx.stats.relation_steps[slot].rank = rank;
    const std::size_t bound = rank + (m - n) / 2;
    PMRANK_ENSURE(kept.size() <= bound && residual_rows <= bound,
                  std::to_string(residual_rows) + " relation rows outside the kernel exceed r + floor((m-n)/2) = " +
                      std::to_string(bound));

    PolyMatrix lifted = matmul(sub.kernel, A_rest);
    PolyMatrix A_in = select_rows(A, in_kernel);
    auto piv_lifted = pivot_profile(lifted, r);
    for (std::size_t i = 0; i < piv_lifted.size(); ++i) {
        PMRANK_ENSURE(piv_lifted[i].has_value(), "zero row in lifted kernel");
        PMRANK_ENSURE(i == 0 || piv_lifted[i - 1]->index < piv_lifted[i]->index, "lifted kernel pivots not increasing");
    }
    // weak Popov with identity pivot index: row i of A pivots at column i
    std::vector<bool> from_lifted;
    std::size_t a = 0, b = 0;
    while (a < in_kernel.size() || b < piv_lifted.size()) {
        const bool take_lifted =
            a == in_kernel.size() || (b < piv_lifted.size() && piv_lifted[b]->index < in_kernel[a]);
        from_lifted.push_back(take_lifted);
        take_lifted ? ++b : ++a;
    }
    return {interleave_rows(A_in, lifted, from_lifted), std::move(sub.rank_profile)};
}

Partial dispatch(const PolyMatrix& F, const Shift& s, std::size_t depth, Context& ctx) {
    ++ctx.stats.calls;
    ctx.stats.max_depth = std::max(ctx.stats.max_depth, depth);
    PMRANK_ENSURE(s.size() == F.rows() && shift_dominates(F, s), "recursive shift does not dominate rdeg");

    const std::size_t m = F.rows(), n = F.cols();
    if (F.is_zero()) return {PolyMatrix::identity(F.field(), m), {}};
    if (m == 1) {
        std::size_t j = 0;
        while (F(0, j).is_zero()) ++j;
        return {PolyMatrix(F.field(), 0, 1), {j + 1}};
    }
    Partial out = m < 2 * n ? split_columns(F, s, depth, ctx) : via_relations(F, s, depth, ctx);

    if (ctx.opts.check_exactness) {
        PMRANK_ENSURE(out.kernel.rows() + out.rank_profile.size() == m, "kernel rows + rank != m");
        PMRANK_ENSURE(matmul(out.kernel, F).is_zero(), "kernel * F != 0");
        PMRANK_ENSURE(is_ordered_weak_popov(out.kernel, s), "kernel is not s-ordered weak Popov");
        PMRANK_ENSURE(std::is_sorted(out.rank_profile.begin(), out.rank_profile.end()), "rank profile unsorted");
    }
    return out;
}

template <class Body>
KernelRankResult run(const PolyMatrix& F, const Shift& s, const KernelOptions& opts, Body body) {
    check_shift(F, s);
    Context ctx{opts, {}};
    const std::uint64_t ops0 = field_op_count();
    Partial p = body(ctx);
    ctx.stats.field_ops = field_op_count() - ops0;
    return {std::move(p.kernel), std::move(p.rank_profile), std::move(ctx.stats)};
}

} // namespace

KernelRankResult kernel_basis_rank_profile(const PolyMatrix& F, const Shift& s, const KernelOptions& opts) {
    return run(F, s, opts, [&](Context& ctx) { return dispatch(F, s, 0, ctx); });
}

KernelRankResult kernel_split_columns(const PolyMatrix& F, const Shift& s, const KernelOptions& opts) {
    if (F.is_zero() || F.rows() < 2 || F.rows() >= 2 * F.cols())
        throw UsageError("kernel_split_columns: requires F != 0, m >= 2 and m < 2n");
    return run(F, s, opts, [&](Context& ctx) {
        ++ctx.stats.calls;
        return split_columns(F, s, 0, ctx);
    });
}

KernelRankResult kernel_via_relations(const PolyMatrix& F, const Shift& s, const KernelOptions& opts) {
    if (F.is_zero() || F.rows() < 2 || 2 * F.cols() > F.rows())
        throw UsageError("kernel_via_relations: requires F != 0, m >= 2 and n <= m/2");
    return run(F, s, opts, [&](Context& ctx) {
        ++ctx.stats.calls;
        return via_relations(F, s, 0, ctx);
    });
}

} // namespace pmrank
