#include "pmrank/poly_matrix.hpp"

#include "pmrank/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pmrank {

std::int64_t Shift::sum() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), std::int64_t{0});
}

Shift Shift::select(const IndexList& idx) const {
    std::vector<std::int64_t> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) {
        if (i == 0 || i > values_.size()) throw UsageError("Shift::select: index out of range");
        out.push_back(values_[i - 1]);
    }
    return Shift(std::move(out));
}

Shift to_shift(std::span<const Degree> degrees) {
    std::vector<std::int64_t> out;
    out.reserve(degrees.size());
    for (const Degree& d : degrees) {
        if (d.is_neg_inf()) throw UsageError("to_shift: NEG_INF entry");
        out.push_back(d.value());
    }
    return Shift(std::move(out));
}

// ---------------------------------------------------------------------------
// Constant matrices

ConstMatrix const_matmul(const ConstMatrix& a, const ConstMatrix& b) {
    if (a.cols() != b.rows() || !(a.field() == b.field())) throw UsageError("const_matmul: shape or field mismatch");
    const FieldSpec& f = a.field();
    ConstMatrix c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Coeff aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
            add_field_ops(b.cols());
        }
    return c;
}

namespace {

// In-place row echelon; returns rank, accumulates the determinant's sign/scale
// when `det` is non-null (square input only).
std::size_t echelonize(ConstMatrix& a, Coeff* det) {
    const FieldSpec& f = a.field();
    std::size_t rank = 0;
    Coeff d = 1;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < a.rows() && a(piv, col) == 0) ++piv;
        if (piv == a.rows()) {
            d = 0;
            continue;
        }
        if (piv != rank) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(rank, j));
            d = f.neg(d);
        }
        const Coeff pv = a(rank, col);
        d = f.mul(d, pv);
        const Coeff inv = f.inv(pv);
        for (std::size_t i = rank + 1; i < a.rows(); ++i) {
            if (a(i, col) == 0) continue;
            const Coeff factor = f.mul(a(i, col), inv);
            for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = f.sub(a(i, j), f.mul(factor, a(rank, j)));
            add_field_ops(a.cols() - col);
        }
        ++rank;
    }
    if (det) *det = rank == a.rows() ? d : 0;
    return rank;
}

} // namespace

std::size_t const_rank(ConstMatrix a) { return echelonize(a, nullptr); }

Coeff const_det(ConstMatrix a) {
    if (a.rows() != a.cols()) throw UsageError("const_det: matrix is not square");
    Coeff d = 1;
    echelonize(a, &d);
    return d;
}

// ---------------------------------------------------------------------------
// PolyMatrix

PolyMatrix::PolyMatrix(FieldSpec f, const std::vector<std::vector<Poly>>& rows)
    : field_(f), rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw UsageError("PolyMatrix: ragged rows");
        for (const auto& p : r) {
            if (!(p.field() == f)) throw UsageError("PolyMatrix: entry over a different modulus");
            entries_.push_back(p);
        }
    }
}

PolyMatrix PolyMatrix::identity(FieldSpec f, std::size_t n) {
    PolyMatrix I(f, n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = Poly::constant(f, 1);
    return I;
}

void PolyMatrix::set(std::size_t i, std::size_t j, Poly p) {
    if (i >= rows_ || j >= cols_) throw UsageError("PolyMatrix::set: index out of range");
    if (!(p.field() == field_)) throw UsageError("PolyMatrix::set: entry over a different modulus");
    entries_[i * cols_ + j] = std::move(p);
}

bool PolyMatrix::is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool PolyMatrix::row_is_zero(std::size_t i) const noexcept {
    for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero()) return false;
    return true;
}

Degree PolyMatrix::max_degree() const noexcept {
    Degree d;
    for (const auto& p : entries_) d = std::max(d, p.degree());
    return d;
}

std::vector<Degree> rdeg(const PolyMatrix& F) {
    std::vector<Degree> out(F.rows());
    for (std::size_t i = 0; i < F.rows(); ++i)
        for (std::size_t j = 0; j < F.cols(); ++j) out[i] = std::max(out[i], F(i, j).degree());
    return out;
}

std::vector<Degree> cdeg(const PolyMatrix& F) {
    std::vector<Degree> out(F.cols());
    for (std::size_t i = 0; i < F.rows(); ++i)
        for (std::size_t j = 0; j < F.cols(); ++j) out[j] = std::max(out[j], F(i, j).degree());
    return out;
}

namespace {

void require_shift(const PolyMatrix& F, const Shift& s, const char* who) {
    if (s.size() != F.cols())
        throw UsageError(std::string(who) + ": shift has length " + std::to_string(s.size()) +
                         ", matrix has " + std::to_string(F.cols()) + " columns");
}

} // namespace

std::vector<Degree> rdeg_shifted(const PolyMatrix& F, const Shift& s) {
    require_shift(F, s, "rdeg_shifted");
    std::vector<Degree> out(F.rows());
    for (std::size_t i = 0; i < F.rows(); ++i)
        for (std::size_t j = 0; j < F.cols(); ++j) out[i] = std::max(out[i], F(i, j).degree() + s[j]);
    return out;
}

ConstMatrix leading_matrix(const PolyMatrix& F, const Shift& s) {
    auto t = rdeg_shifted(F, s);
    ConstMatrix L(F.field(), F.rows(), F.cols());
    for (std::size_t i = 0; i < F.rows(); ++i) {
        if (t[i].is_neg_inf()) continue;
        for (std::size_t j = 0; j < F.cols(); ++j) {
            const Poly& p = F(i, j);
            if (!p.is_zero() && p.degree() + s[j] == t[i]) L(i, j) = p.leading_coeff();
        }
    }
    return L;
}

PivotProfile pivot_profile(const PolyMatrix& F, const Shift& s) {
    auto t = rdeg_shifted(F, s);
    PivotProfile out(F.rows());
    for (std::size_t i = 0; i < F.rows(); ++i) {
        if (t[i].is_neg_inf()) continue;
        for (std::size_t j = F.cols(); j-- > 0;) {
            const Poly& p = F(i, j);
            if (!p.is_zero() && p.degree() + s[j] == t[i]) {
                out[i] = Pivot{j + 1, p.degree().value()};
                break;
            }
        }
    }
    return out;
}

bool is_reduced(const PolyMatrix& F, const Shift& s) {
    return const_rank(leading_matrix(F, s)) == F.rows();
}

bool is_ordered_weak_popov(const PolyMatrix& F, const Shift& s) {
    auto piv = pivot_profile(F, s);
    std::size_t last = 0;
    for (const auto& p : piv) {
        if (!p || p->index <= last) return false;
        last = p->index;
    }
    return true;
}

PolyMatrix matmul(const PolyMatrix& A, const PolyMatrix& B) {
    if (!(A.field() == B.field())) throw UsageError("matmul: mismatched moduli");
    if (A.cols() != B.rows())
        throw UsageError("matmul: inner dimensions " + std::to_string(A.cols()) + " and " +
                         std::to_string(B.rows()) + " differ");
    const FieldSpec& f = A.field();
    const std::uint64_t p = f.modulus();
    const std::size_t m = A.rows(), k = A.cols(), n = B.cols();
    PolyMatrix C(f, m, n);
    auto rd = rdeg(A);
    auto cd = cdeg(B);
    std::vector<std::uint64_t> acc;
    for (std::size_t i = 0; i < m; ++i) {
        if (rd[i].is_neg_inf()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (cd[j].is_neg_inf()) continue;
            if (p == 2) {
                Poly sum(f);
                for (std::size_t l = 0; l < k; ++l) {
                    if (A(i, l).is_zero() || B(l, j).is_zero()) continue;
                    sum += poly_mul(A(i, l), B(l, j));
                }
                C(i, j) = std::move(sum);
                continue;
            }
            acc.assign(static_cast<std::size_t>(rd[i].value() + cd[j].value() + 1), 0);
            for (std::size_t l = 0; l < k; ++l) {
                const Poly& a = A(i, l);
                const Poly& b = B(l, j);
                if (a.is_zero() || b.is_zero()) continue;
                if (std::min(a.size(), b.size()) >= detail::default_karatsuba_crossover) {
                    auto prod = detail::mul_karatsuba(a.coeffs(), b.coeffs(), f);
                    for (std::size_t t = 0; t < prod.size(); ++t) {
                        acc[t] += prod[t];
                        if (acc[t] >> 63) acc[t] %= p;
                    }
                    continue;
                }
                auto ac = a.coeffs();
                auto bc = b.coeffs();
                for (std::size_t u = 0; u < ac.size(); ++u) {
                    const std::uint64_t au = ac[u];
                    if (au == 0) continue;
                    std::uint64_t* out = acc.data() + u;
                    for (std::size_t v = 0; v < bc.size(); ++v) {
                        out[v] += au * bc[v];
                        if (out[v] >> 63) out[v] %= p;
                    }
                }
                add_field_ops(ac.size() * bc.size());
            }
            std::vector<Coeff> coeffs(acc.size());
            for (std::size_t t = 0; t < acc.size(); ++t) coeffs[t] = static_cast<Coeff>(acc[t] % p);
            C(i, j) = Poly(f, std::move(coeffs));
        }
    }
    return C;
}

namespace {

void check_index_list(const IndexList& idx, std::size_t bound, const char* what) {
    std::vector<bool> seen(bound + 1, false);
    for (std::size_t i : idx) {
        if (i == 0 || i > bound)
            throw UsageError(std::string(what) + " index " + std::to_string(i) + " out of range 1.." +
                             std::to_string(bound));
        if (seen[i]) throw UsageError(std::string(what) + " index " + std::to_string(i) + " is duplicated");
        seen[i] = true;
    }
}

} // namespace

PolyMatrix submatrix(const PolyMatrix& F, const IndexList& rows, const IndexList& cols) {
    check_index_list(rows, F.rows(), "row");
    check_index_list(cols, F.cols(), "column");
    PolyMatrix S(F.field(), rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) S(i, j) = F(rows[i] - 1, cols[j] - 1);
    return S;
}

PolyMatrix select_rows(const PolyMatrix& F, const IndexList& rows) {
    return submatrix(F, rows, iota_list(F.cols()));
}

PolyMatrix select_cols(const PolyMatrix& F, const IndexList& cols) {
    return submatrix(F, iota_list(F.rows()), cols);
}

PolyMatrix stack(const PolyMatrix& A, const PolyMatrix& B) {
    if (!(A.field() == B.field())) throw UsageError("stack: mismatched moduli");
    if (A.cols() != B.cols())
        throw UsageError("stack: column counts " + std::to_string(A.cols()) + " and " +
                         std::to_string(B.cols()) + " differ");
    PolyMatrix S(A.field(), A.rows() + B.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) S(i, j) = A(i, j);
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) S(A.rows() + i, j) = B(i, j);
    return S;
}

PolyMatrix transpose(const PolyMatrix& F) {
    PolyMatrix T(F.field(), F.cols(), F.rows());
    for (std::size_t i = 0; i < F.rows(); ++i)
        for (std::size_t j = 0; j < F.cols(); ++j) T(j, i) = F(i, j);
    return T;
}

PolyMatrix truncate(const PolyMatrix& F, std::size_t tau) {
    PolyMatrix T(F.field(), F.rows(), F.cols());
    for (std::size_t i = 0; i < F.rows(); ++i)
        for (std::size_t j = 0; j < F.cols(); ++j) T(i, j) = poly_truncate(F(i, j), tau);
    return T;
}

PolyMatrix divide_exact_xpow(const PolyMatrix& F, std::size_t tau) {
    PolyMatrix T(F.field(), F.rows(), F.cols());
    for (std::size_t i = 0; i < F.rows(); ++i)
        for (std::size_t j = 0; j < F.cols(); ++j) T(i, j) = poly_divide_exact_xpow(F(i, j), tau);
    return T;
}

ConstMatrix evaluate(const PolyMatrix& F, Coeff alpha) {
    ConstMatrix E(F.field(), F.rows(), F.cols());
    for (std::size_t i = 0; i < F.rows(); ++i)
        for (std::size_t j = 0; j < F.cols(); ++j) E(i, j) = poly_eval(F(i, j), alpha);
    return E;
}

IndexList iota_list(std::size_t n, std::size_t first) {
    IndexList out(n);
    std::iota(out.begin(), out.end(), first);
    return out;
}

} // namespace pmrank
