#pragma once

#include "pmrank/gf_poly.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pmrank {

/// 1-based index lists, as used by every public contract.
using IndexList = std::vector<std::size_t>;

/// Integer weights attached to the columns of the matrix a shift is applied to.
class Shift {
public:
    Shift() = default;
    explicit Shift(std::vector<std::int64_t> values) : values_(std::move(values)) {}
    Shift(std::initializer_list<std::int64_t> values) : values_(values) {}
    static Shift zeros(std::size_t n) { return Shift(std::vector<std::int64_t>(n, 0)); }

    std::size_t size() const noexcept { return values_.size(); }
    std::int64_t operator[](std::size_t i) const { return values_[i]; }
    std::int64_t& operator[](std::size_t i) { return values_[i]; }
    std::int64_t sum() const noexcept;
    const std::vector<std::int64_t>& values() const noexcept { return values_; }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }
    /// Entries at 1-based positions `idx`.
    Shift select(const IndexList& idx) const;

    friend bool operator==(const Shift&, const Shift&) = default;

private:
    std::vector<std::int64_t> values_;
};

/// Shift from a degree tuple; throws UsageError if any entry is NEG_INF.
Shift to_shift(std::span<const Degree> degrees);

struct Pivot {
    std::size_t index;   // 1-based column
    std::int64_t degree; // unshifted degree of the pivot entry
    friend bool operator==(const Pivot&, const Pivot&) = default;
};

/// Per-row pivot; std::nullopt for zero rows.
using PivotProfile = std::vector<std::optional<Pivot>>;

/// Dense m x n matrix over GF(p).
class ConstMatrix {
public:
    ConstMatrix(FieldSpec f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    const FieldSpec& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Coeff operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Coeff& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    friend bool operator==(const ConstMatrix&, const ConstMatrix&) = default;

private:
    FieldSpec field_;
    std::size_t rows_, cols_;
    std::vector<Coeff> data_;
};

ConstMatrix const_matmul(const ConstMatrix& a, const ConstMatrix& b);
/// Gaussian elimination over GF(p).
std::size_t const_rank(ConstMatrix a);
Coeff const_det(ConstMatrix a);

/// m x n matrix of polynomials over one prime field. Zero dimensions allowed.
class PolyMatrix {
public:
    PolyMatrix(FieldSpec f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), entries_(rows * cols, Poly(f)) {}
    /// Row-major nested initializer; all rows must have equal length.
    PolyMatrix(FieldSpec f, const std::vector<std::vector<Poly>>& rows);

    static PolyMatrix identity(FieldSpec f, std::size_t n);

    const FieldSpec& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    const Poly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    Poly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    /// Bounds- and field-checked setter (0-based i, j).
    void set(std::size_t i, std::size_t j, Poly p);

    bool is_zero() const noexcept;
    bool row_is_zero(std::size_t i) const noexcept;
    Degree max_degree() const noexcept;

    friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

private:
    FieldSpec field_;
    std::size_t rows_, cols_;
    std::vector<Poly> entries_;
};

std::vector<Degree> rdeg(const PolyMatrix& F);
/// max_j (s_j + deg F_ij) per row, NEG_INF for zero rows.
std::vector<Degree> rdeg_shifted(const PolyMatrix& F, const Shift& s);
std::vector<Degree> cdeg(const PolyMatrix& F);
/// Zero rows of F give zero rows.
ConstMatrix leading_matrix(const PolyMatrix& F, const Shift& s);
/// Rightmost index attaining the shifted row degree, with its unshifted degree.
PivotProfile pivot_profile(const PolyMatrix& F, const Shift& s);
bool is_reduced(const PolyMatrix& F, const Shift& s);
/// No zero rows and strictly increasing s-pivot indices.
bool is_ordered_weak_popov(const PolyMatrix& F, const Shift& s);

PolyMatrix matmul(const PolyMatrix& A, const PolyMatrix& B);
/// 1-based, duplicate-free row and column lists.
PolyMatrix submatrix(const PolyMatrix& F, const IndexList& rows, const IndexList& cols);
PolyMatrix select_rows(const PolyMatrix& F, const IndexList& rows);
PolyMatrix select_cols(const PolyMatrix& F, const IndexList& cols);
/// Vertical concatenation [A; B].
PolyMatrix stack(const PolyMatrix& A, const PolyMatrix& B);
PolyMatrix transpose(const PolyMatrix& F);
/// Entrywise F mod x^tau.
PolyMatrix truncate(const PolyMatrix& F, std::size_t tau);
/// Entrywise exact division by x^tau; ExactnessError if not divisible.
PolyMatrix divide_exact_xpow(const PolyMatrix& F, std::size_t tau);
ConstMatrix evaluate(const PolyMatrix& F, Coeff alpha);

/// (1, 2, ..., n)
IndexList iota_list(std::size_t n, std::size_t first = 1);

} // namespace pmrank
