#include "pmrank/oracle.hpp"

#include "pmrank/errors.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>

namespace pmrank::oracle {

namespace {

struct RowPivot {
    std::size_t index;   // 0-based column
    std::int64_t degree; // unshifted
    std::int64_t sdeg;   // shifted row degree
};

std::optional<RowPivot> row_pivot(const PolyMatrix& W, std::size_t i, const Shift& s) {
    std::optional<RowPivot> best;
    for (std::size_t j = 0; j < W.cols(); ++j) {
        const Poly& p = W(i, j);
        if (p.is_zero()) continue;
        const std::int64_t d = static_cast<std::int64_t>(p.size()) - 1;
        if (!best || d + s[j] >= best->sdeg) best = RowPivot{j, d, d + s[j]};
    }
    return best;
}

// row_t -= c * x^e * row_r on every column
void row_axpy(PolyMatrix& M, std::size_t target, std::size_t src, Coeff c, std::size_t e) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
        if (M(src, j).is_zero()) continue;
        M(target, j).add_scaled(M(src, j), c, e);
    }
}

PolyMatrix product(const PolyMatrix& A, const PolyMatrix& B) {
    PolyMatrix C(A.field(), A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) {
            Poly acc(A.field());
            for (std::size_t l = 0; l < A.cols(); ++l)
                if (!A(i, l).is_zero() && !B(l, j).is_zero()) acc += poly_mul(A(i, l), B(l, j));
            C(i, j) = std::move(acc);
        }
    return C;
}

PolyMatrix pick_columns(const PolyMatrix& F, const std::vector<std::size_t>& cols0) {
    PolyMatrix S(F.field(), F.rows(), cols0.size());
    for (std::size_t i = 0; i < F.rows(); ++i)
        for (std::size_t j = 0; j < cols0.size(); ++j) S(i, j) = F(i, cols0[j]);
    return S;
}

PolyMatrix pick_rows(const PolyMatrix& F, const std::vector<std::size_t>& rows0) {
    PolyMatrix S(F.field(), rows0.size(), F.cols());
    for (std::size_t i = 0; i < rows0.size(); ++i)
        for (std::size_t j = 0; j < F.cols(); ++j) S(i, j) = F(rows0[i], j);
    return S;
}

} // namespace

MsResult ms_weak_popov(const PolyMatrix& F, const Shift& s, bool track_transform) {
    if (s.size() != F.cols()) throw UsageError("ms_weak_popov: shift length differs from column count");
    const FieldSpec& f = F.field();
    const std::size_t m = F.rows();
    MsResult out{F, track_transform ? PolyMatrix::identity(f, m) : PolyMatrix(f, 0, 0), 0};
    PolyMatrix& W = out.reduced;

    std::vector<std::optional<RowPivot>> piv(m);
    for (std::size_t i = 0; i < m; ++i) piv[i] = row_pivot(W, i, s);

    const std::size_t no_row = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> owner(F.cols());
    while (true) {
        // lowest-index collision pair (i, k), i < k
        std::fill(owner.begin(), owner.end(), no_row);
        std::size_t lo = no_row, hi = no_row;
        for (std::size_t k = 0; k < m && lo == no_row; ++k) {
            if (!piv[k]) continue;
            std::size_t& o = owner[piv[k]->index];
            if (o == no_row)
                o = k;
            else {
                lo = o;
                hi = k;
            }
        }
        if (lo == no_row) break;

        const bool lo_reduces = piv[lo]->degree <= piv[hi]->degree;
        const std::size_t reducer = lo_reduces ? lo : hi;
        const std::size_t target = lo_reduces ? hi : lo;
        const RowPivot pr = *piv[reducer], pt = *piv[target];
        const std::size_t e = static_cast<std::size_t>(pt.degree - pr.degree);
        const Coeff c = f.neg(f.mul(W(target, pt.index).leading_coeff(), f.inv(W(reducer, pr.index).leading_coeff())));
        row_axpy(W, target, reducer, c, e);
        if (track_transform) row_axpy(out.transform, target, reducer, c, e);

        piv[target] = row_pivot(W, target, s);
        // (s-degree, pivot index) of the modified row strictly decreases
        if (piv[target]) {
            const auto& q = *piv[target];
            PMRANK_ENSURE(q.sdeg < pt.sdeg || (q.sdeg == pt.sdeg && q.index < pt.index),
                          "Mulders-Storjohann step did not decrease the row's leading position");
        }
        ++out.steps;
    }
    return out;
}

MsResult ms_weak_popov(const PolyMatrix& F) { return ms_weak_popov(F, Shift::zeros(F.cols())); }

std::size_t rank_oracle(const PolyMatrix& F) {
    MsResult r = ms_weak_popov(F, Shift::zeros(F.cols()), false);
    std::size_t rank = 0;
    for (std::size_t i = 0; i < F.rows(); ++i)
        if (!r.reduced.row_is_zero(i)) ++rank;
    return rank;
}

IndexList crp_oracle(const PolyMatrix& F) {
    std::vector<std::size_t> kept;
    IndexList out;
    for (std::size_t j = 0; j < F.cols(); ++j) {
        kept.push_back(j);
        if (rank_oracle(pick_columns(F, kept)) == kept.size())
            out.push_back(j + 1);
        else
            kept.pop_back();
    }
    return out;
}

IndexList row_rank_profile_oracle(const PolyMatrix& F) {
    std::vector<std::size_t> kept;
    IndexList out;
    for (std::size_t i = 0; i < F.rows(); ++i) {
        kept.push_back(i);
        if (rank_oracle(pick_rows(F, kept)) == kept.size())
            out.push_back(i + 1);
        else
            kept.pop_back();
    }
    return out;
}

PolyMatrix kernel_oracle(const PolyMatrix& F) {
    MsResult r = ms_weak_popov(F);
    std::vector<std::size_t> zero_rows;
    for (std::size_t i = 0; i < F.rows(); ++i)
        if (r.reduced.row_is_zero(i)) zero_rows.push_back(i);
    return pick_rows(r.transform, zero_rows);
}

PolyMatrix reduce_to_weak_popov(const PolyMatrix& K, const Shift& s) {
    MsResult r = ms_weak_popov(K, s, false);
    std::vector<std::pair<std::size_t, std::size_t>> order; // (pivot index, row)
    for (std::size_t i = 0; i < K.rows(); ++i)
        if (auto p = row_pivot(r.reduced, i, s)) order.emplace_back(p->index, i);
    std::sort(order.begin(), order.end());
    std::vector<std::size_t> rows;
    for (const auto& [pi, i] : order) rows.push_back(i);
    return pick_rows(r.reduced, rows);
}

Poly det_small(const PolyMatrix& F) {
    if (F.rows() != F.cols()) throw UsageError("det_small: matrix is not square");
    if (F.rows() > 6) throw UsageError("det_small: dimension above 6");
    const FieldSpec& f = F.field();
    const std::size_t n = F.rows();
    if (n == 0) return Poly::constant(f, 1);
    PolyMatrix M = F;
    Poly prev = Poly::constant(f, 1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && M(piv, k).is_zero()) ++piv;
        if (piv == n) return Poly(f);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(M(piv, j), M(k, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                M(i, j) = poly_divide_exact(M(i, j) * M(k, k) - M(i, k) * M(k, j), prev);
            M(i, k) = Poly(f);
        }
        prev = M(k, k);
    }
    Poly d = M(n - 1, n - 1);
    return negate ? -d : d;
}

bool minors_gcd_is_one(const PolyMatrix& K) {
    const std::size_t k = K.rows(), n = K.cols();
    if (k > n) throw CapabilityError("minors_gcd_is_one: more rows than columns");
    if (k > 4 || n > 12) throw CapabilityError("minors_gcd_is_one: beyond the 4 x 12 size guard");
    if (k == 0) return true;
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
    Poly g(K.field());
    do {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j)
            if (mask[j]) cols.push_back(j);
        g = poly_gcd(g, det_small(pick_columns(K, cols)));
        if (g.degree() == Degree(0)) return true;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return false;
}

Poly random_poly(const FieldSpec& f, std::size_t max_degree, std::mt19937_64& rng) {
    std::vector<Coeff> c(max_degree + 1);
    for (auto& x : c) x = static_cast<Coeff>(rng() % f.modulus());
    return Poly(f, std::move(c));
}

PolyMatrix random_instance(const InstanceSpec& spec) {
    if (spec.rank > std::min(spec.rows, spec.cols))
        throw UsageError("random_instance: rank " + std::to_string(spec.rank) + " exceeds min(m, n)");
    const FieldSpec f(spec.modulus);
    if (spec.rank == 0) return PolyMatrix(f, spec.rows, spec.cols);
    std::mt19937_64 rng(spec.seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        PolyMatrix S(f, spec.rows, spec.rank), R(f, spec.rank, spec.cols);
        for (std::size_t i = 0; i < spec.rows; ++i)
            for (std::size_t j = 0; j < spec.rank; ++j) S(i, j) = random_poly(f, spec.degree, rng);
        for (std::size_t i = 0; i < spec.rank; ++i)
            for (std::size_t j = 0; j < spec.cols; ++j) R(i, j) = random_poly(f, spec.degree, rng);
        PolyMatrix F = product(S, R);
        if (rank_oracle(F) == spec.rank) return F;
    }
    throw InternalError("random_instance: no instance of the requested rank after 64 draws");
}

} // namespace pmrank::oracle
