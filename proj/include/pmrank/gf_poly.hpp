#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pmrank {

using Coeff = std::uint32_t;

/// Prime field GF(p) with p <= 2^31 - 1. Elements are residues in [0, p).
class FieldSpec {
public:
    static constexpr std::uint64_t max_modulus = (1ull << 31) - 1;

    /// Throws UsageError unless `p` is a prime not exceeding max_modulus.
    explicit FieldSpec(std::uint64_t p);

    Coeff modulus() const noexcept { return p_; }

    Coeff reduce(std::uint64_t v) const noexcept { return static_cast<Coeff>(v % p_); }
    Coeff add(Coeff a, Coeff b) const noexcept {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Coeff sub(Coeff a, Coeff b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Coeff neg(Coeff a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Coeff mul(Coeff a, Coeff b) const noexcept {
        return static_cast<Coeff>(static_cast<std::uint64_t>(a) * b % p_);
    }
    Coeff pow(Coeff a, std::uint64_t e) const noexcept;
    /// Throws UsageError on zero.
    Coeff inv(Coeff a) const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    Coeff p_;
};

/// Deterministic primality test for 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

/// A degree: a nonnegative integer or NEG_INF (the degree of zero).
/// Shifted degrees may be negative integers; NEG_INF stays below all of them.
class Degree {
public:
    constexpr Degree() noexcept = default; // NEG_INF
    constexpr Degree(std::int64_t v) noexcept : finite_(true), value_(v) {}

    static constexpr Degree neg_inf() noexcept { return Degree(); }

    constexpr bool is_neg_inf() const noexcept { return !finite_; }
    constexpr bool is_finite() const noexcept { return finite_; }
    /// Throws UsageError on NEG_INF.
    std::int64_t value() const;

    constexpr Degree operator+(std::int64_t k) const noexcept {
        return finite_ ? Degree(value_ + k) : Degree();
    }
    constexpr Degree operator-(std::int64_t k) const noexcept {
        return finite_ ? Degree(value_ - k) : Degree();
    }
    /// NEG_INF absorbs.
    constexpr Degree operator+(Degree o) const noexcept {
        return finite_ && o.finite_ ? Degree(value_ + o.value_) : Degree();
    }

    constexpr bool operator==(const Degree& o) const noexcept {
        return finite_ == o.finite_ && (!finite_ || value_ == o.value_);
    }
    constexpr std::strong_ordering operator<=>(const Degree& o) const noexcept {
        if (!finite_ || !o.finite_)
            return static_cast<int>(finite_) <=> static_cast<int>(o.finite_);
        return value_ <=> o.value_;
    }

    std::string to_string() const;

private:
    bool finite_ = false;
    std::int64_t value_ = 0;
};

/// Dense univariate polynomial over GF(p), coefficients low to high.
/// Always normalized: the last stored coefficient is nonzero.
class Poly {
public:
    explicit Poly(FieldSpec f) noexcept : field_(f) {}
    /// Coefficients must already be residues in [0, p); trailing zeros are dropped.
    Poly(FieldSpec f, std::vector<Coeff> coeffs);
    Poly(FieldSpec f, std::initializer_list<Coeff> coeffs)
        : Poly(f, std::vector<Coeff>(coeffs)) {}

    static Poly constant(FieldSpec f, Coeff c) { return monomial(f, c, 0); }
    static Poly monomial(FieldSpec f, Coeff c, std::size_t k);

    const FieldSpec& field() const noexcept { return field_; }
    std::span<const Coeff> coeffs() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    Degree degree() const noexcept {
        return coeffs_.empty() ? Degree::neg_inf()
                               : Degree(static_cast<std::int64_t>(coeffs_.size()) - 1);
    }
    /// Coefficient of x^i; 0 beyond the degree.
    Coeff coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
    Coeff leading_coeff() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    /// this += c * x^k * o
    Poly& add_scaled(const Poly& o, Coeff c, std::size_t k = 0);
    Poly scaled(Coeff c) const;
    Poly shifted_up(std::size_t k) const;
    Poly operator-() const { return scaled(field_.neg(1)); }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) noexcept {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

    /// Space-separated low-to-high residues; "0" for the zero polynomial.
    std::string to_text() const;

private:
    void normalize() noexcept;
    void require_same_field(const Poly& o) const;

    FieldSpec field_;
    std::vector<Coeff> coeffs_;
};

Poly poly_mul(const Poly& a, const Poly& b);
Degree poly_deg(const Poly& a) noexcept;
/// b with b * x^tau = a. Throws ExactnessError if a has a nonzero coefficient below tau.
Poly poly_divide_exact_xpow(const Poly& a, std::size_t tau);
/// a mod x^tau
Poly poly_truncate(const Poly& a, std::size_t tau);
Coeff poly_eval(const Poly& a, Coeff alpha);

/// Euclidean division; throws UsageError on division by zero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
/// Exact quotient a / b; throws ExactnessError on nonzero remainder.
Poly poly_divide_exact(const Poly& a, const Poly& b);
/// Monic gcd (zero iff both operands are zero).
Poly poly_gcd(Poly a, Poly b);

/// Per-thread count of field multiplications performed by the arithmetic
/// kernels. Monotone; take differences to measure a computation.
std::uint64_t field_op_count() noexcept;
void add_field_ops(std::uint64_t n) noexcept;

namespace detail {

inline constexpr std::size_t default_karatsuba_crossover = 32;

// Raw product kernels over coefficient spans; outputs are not normalized and
// have length la + lb - 1 (empty if either input is empty).
std::vector<Coeff> mul_schoolbook(std::span<const Coeff> a, std::span<const Coeff> b,
                                  const FieldSpec& f);
std::vector<Coeff> mul_karatsuba(std::span<const Coeff> a, std::span<const Coeff> b,
                                 const FieldSpec& f,
                                 std::size_t crossover = default_karatsuba_crossover);
/// Bit-packed carry-less product; inputs must be 0/1 residues.
std::vector<Coeff> mul_gf2_packed(std::span<const Coeff> a, std::span<const Coeff> b);
/// Generic (non-GF(2)) dispatch between schoolbook and Karatsuba.
std::vector<Coeff> mul_generic(std::span<const Coeff> a, std::span<const Coeff> b,
                               const FieldSpec& f);

} // namespace detail

} // namespace pmrank
