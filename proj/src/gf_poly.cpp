#include "pmrank/gf_poly.hpp"

#include "pmrank/errors.hpp"

#include <algorithm>

namespace pmrank {

namespace {

thread_local std::uint64_t tl_field_ops = 0;

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // These witnesses are deterministic for all n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldSpec::FieldSpec(std::uint64_t p) : p_(0) {
    if (p > max_modulus || !is_prime(p))
        throw UsageError("modulus " + std::to_string(p) + " is not a prime <= 2^31-1");
    p_ = static_cast<Coeff>(p);
}

Coeff FieldSpec::pow(Coeff a, std::uint64_t e) const noexcept {
    return static_cast<Coeff>(powmod64(a, e, p_));
}

Coeff FieldSpec::inv(Coeff a) const {
    if (a % p_ == 0) throw UsageError("inverse of zero");
    return pow(a, p_ - 2);
}

std::int64_t Degree::value() const {
    if (!finite_) throw UsageError("value() of NEG_INF degree");
    return value_;
}

std::string Degree::to_string() const {
    return finite_ ? std::to_string(value_) : std::string("-inf");
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(FieldSpec f, std::vector<Coeff> coeffs) : field_(f), coeffs_(std::move(coeffs)) {
    for (Coeff c : coeffs_) {
        if (c >= field_.modulus())
            throw UsageError("coefficient " + std::to_string(c) + " is not a residue mod " +
                             std::to_string(field_.modulus()));
    }
    normalize();
}

Poly Poly::monomial(FieldSpec f, Coeff c, std::size_t k) {
    Poly r(f);
    c = f.reduce(c);
    if (c != 0) {
        r.coeffs_.assign(k + 1, 0);
        r.coeffs_[k] = c;
    }
    return r;
}

void Poly::normalize() noexcept {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void Poly::require_same_field(const Poly& o) const {
    if (!(field_ == o.field_))
        throw UsageError("polynomials over different moduli (" + std::to_string(field_.modulus()) +
                         " vs " + std::to_string(o.field_.modulus()) + ")");
}

Poly& Poly::operator+=(const Poly& o) {
    require_same_field(o);
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_.add(coeffs_[i], o.coeffs_[i]);
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    require_same_field(o);
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_.sub(coeffs_[i], o.coeffs_[i]);
    normalize();
    return *this;
}

Poly& Poly::add_scaled(const Poly& o, Coeff c, std::size_t k) {
    require_same_field(o);
    c = field_.reduce(c);
    if (c == 0 || o.is_zero()) return *this;
    if (o.coeffs_.size() + k > coeffs_.size()) coeffs_.resize(o.coeffs_.size() + k, 0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i + k] = field_.add(coeffs_[i + k], field_.mul(c, o.coeffs_[i]));
    tl_field_ops += o.coeffs_.size();
    normalize();
    return *this;
}

Poly Poly::scaled(Coeff c) const {
    Poly r(field_);
    c = field_.reduce(c);
    if (c == 0) return r;
    r.coeffs_.resize(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = field_.mul(c, coeffs_[i]);
    tl_field_ops += coeffs_.size();
    return r;
}

Poly Poly::shifted_up(std::size_t k) const {
    Poly r(field_);
    if (is_zero()) return r;
    r.coeffs_.assign(k, 0);
    r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return r;
}

std::string Poly::to_text() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(coeffs_[i]);
    }
    return out;
}

Poly operator*(const Poly& a, const Poly& b) { return poly_mul(a, b); }

// ---------------------------------------------------------------------------
// Product kernels

namespace detail {

std::vector<Coeff> mul_schoolbook(std::span<const Coeff> a, std::span<const Coeff> b,
                                  const FieldSpec& f) {
    if (a.empty() || b.empty()) return {};
    const std::size_t la = a.size(), lb = b.size();
    const std::uint64_t p = f.modulus();
    std::vector<Coeff> out(la + lb - 1);
    for (std::size_t k = 0; k < la + lb - 1; ++k) {
        const std::size_t lo = k >= lb ? k - lb + 1 : 0;
        const std::size_t hi = std::min(k, la - 1);
        std::uint64_t acc = 0;
        for (std::size_t i = lo; i <= hi; ++i) {
            acc += static_cast<std::uint64_t>(a[i]) * b[k - i];
            if (acc >> 63) acc %= p;
        }
        out[k] = static_cast<Coeff>(acc % p);
    }
    tl_field_ops += la * lb;
    return out;
}

namespace {

void add_into(std::vector<Coeff>& dst, std::size_t offset, std::span<const Coeff> src,
              const FieldSpec& f) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[offset + i] = f.add(dst[offset + i], src[i]);
}

void karatsuba_rec(std::span<const Coeff> a, std::span<const Coeff> b, const FieldSpec& f,
                   std::size_t crossover, std::vector<Coeff>& out, std::size_t offset);

// Balanced case: |a| == |b|.
void karatsuba_balanced(std::span<const Coeff> a, std::span<const Coeff> b, const FieldSpec& f,
                        std::size_t crossover, std::vector<Coeff>& out, std::size_t offset) {
    const std::size_t n = a.size();
    const std::size_t h = n / 2;
    auto a0 = a.first(h), a1 = a.subspan(h);
    auto b0 = b.first(h), b1 = b.subspan(h);

    std::vector<Coeff> sa(a1.begin(), a1.end()), sb(b1.begin(), b1.end());
    for (std::size_t i = 0; i < h; ++i) {
        sa[i] = f.add(sa[i], a0[i]);
        sb[i] = f.add(sb[i], b0[i]);
    }
    std::vector<Coeff> z0(2 * h - 1, 0), z2(2 * (n - h) - 1, 0), z1(2 * (n - h) - 1, 0);
    karatsuba_rec(a0, b0, f, crossover, z0, 0);
    karatsuba_rec(a1, b1, f, crossover, z2, 0);
    karatsuba_rec(sa, sb, f, crossover, z1, 0);
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = f.sub(z1[i], z0[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = f.sub(z1[i], z2[i]);
    add_into(out, offset, z0, f);
    add_into(out, offset + h, z1, f);
    add_into(out, offset + 2 * h, z2, f);
}

void karatsuba_rec(std::span<const Coeff> a, std::span<const Coeff> b, const FieldSpec& f,
                   std::size_t crossover, std::vector<Coeff>& out, std::size_t offset) {
    if (a.empty() || b.empty()) return;
    if (a.size() < b.size()) std::swap(a, b);
    if (b.size() < std::max<std::size_t>(crossover, 2)) {
        add_into(out, offset, mul_schoolbook(a, b, f), f);
        return;
    }
    if (a.size() == b.size()) {
        karatsuba_balanced(a, b, f, crossover, out, offset);
        return;
    }
    // Unbalanced: cut the longer operand into chunks of the shorter length.
    for (std::size_t pos = 0; pos < a.size(); pos += b.size()) {
        auto chunk = a.subspan(pos, std::min(b.size(), a.size() - pos));
        karatsuba_rec(chunk, b, f, crossover, out, offset + pos);
    }
}

} // namespace

std::vector<Coeff> mul_karatsuba(std::span<const Coeff> a, std::span<const Coeff> b,
                                 const FieldSpec& f, std::size_t crossover) {
    if (a.empty() || b.empty()) return {};
    std::vector<Coeff> out(a.size() + b.size() - 1, 0);
    karatsuba_rec(a, b, f, crossover, out, 0);
    return out;
}

std::vector<Coeff> mul_gf2_packed(std::span<const Coeff> a, std::span<const Coeff> b) {
    if (a.empty() || b.empty()) return {};
    auto pack = [](std::span<const Coeff> v) {
        std::vector<std::uint64_t> w((v.size() + 63) / 64, 0);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] & 1u) w[i / 64] |= 1ull << (i % 64);
        return w;
    };
    if (a.size() < b.size()) std::swap(a, b);
    const auto wa = pack(a);
    const auto wb = pack(b);
    const std::size_t out_len = a.size() + b.size() - 1;
    std::vector<std::uint64_t> acc((out_len + 63) / 64 + 1, 0);
    // acc ^= wa << bit for every set bit of b
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (!(b[j] & 1u)) continue;
        const std::size_t word = j / 64, bit = j % 64;
        for (std::size_t i = 0; i < wa.size(); ++i) {
            acc[word + i] ^= wa[i] << bit;
            if (bit) acc[word + i + 1] ^= wa[i] >> (64 - bit);
        }
    }
    tl_field_ops += a.size() * b.size();
    std::vector<Coeff> out(out_len);
    for (std::size_t k = 0; k < out_len; ++k) out[k] = static_cast<Coeff>((acc[k / 64] >> (k % 64)) & 1u);
    return out;
}

std::vector<Coeff> mul_generic(std::span<const Coeff> a, std::span<const Coeff> b,
                               const FieldSpec& f) {
    if (std::min(a.size(), b.size()) < default_karatsuba_crossover) return mul_schoolbook(a, b, f);
    return mul_karatsuba(a, b, f, default_karatsuba_crossover);
}

} // namespace detail

Poly poly_mul(const Poly& a, const Poly& b) {
    if (!(a.field() == b.field()))
        throw UsageError("poly_mul: mismatched moduli " + std::to_string(a.field().modulus()) +
                         " and " + std::to_string(b.field().modulus()));
    if (a.is_zero() || b.is_zero()) return Poly(a.field());
    auto raw = a.field().modulus() == 2 ? detail::mul_gf2_packed(a.coeffs(), b.coeffs())
                                        : detail::mul_generic(a.coeffs(), b.coeffs(), a.field());
    return Poly(a.field(), std::move(raw));
}

Degree poly_deg(const Poly& a) noexcept { return a.degree(); }

Poly poly_divide_exact_xpow(const Poly& a, std::size_t tau) {
    auto c = a.coeffs();
    for (std::size_t i = 0; i < std::min(tau, c.size()); ++i) {
        if (c[i] != 0)
            throw ExactnessError("poly_divide_exact_xpow: coefficient of x^" + std::to_string(i) +
                                 " is nonzero, not divisible by x^" + std::to_string(tau));
    }
    if (tau >= c.size()) return Poly(a.field());
    return Poly(a.field(), std::vector<Coeff>(c.begin() + static_cast<std::ptrdiff_t>(tau), c.end()));
}

Poly poly_truncate(const Poly& a, std::size_t tau) {
    auto c = a.coeffs();
    if (tau >= c.size()) return a;
    return Poly(a.field(), std::vector<Coeff>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(tau)));
}

Coeff poly_eval(const Poly& a, Coeff alpha) {
    const auto& f = a.field();
    alpha = f.reduce(alpha);
    Coeff acc = 0;
    auto c = a.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = f.add(f.mul(acc, alpha), c[i]);
    tl_field_ops += c.size();
    return acc;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (!(a.field() == b.field())) throw UsageError("poly_divmod: mismatched moduli");
    if (b.is_zero()) throw UsageError("poly_divmod: division by zero polynomial");
    const FieldSpec& f = a.field();
    if (a.size() < b.size()) return {Poly(f), a};
    std::vector<Coeff> rem(a.coeffs().begin(), a.coeffs().end());
    auto bc = b.coeffs();
    const std::size_t lb = bc.size();
    const Coeff lead_inv = f.inv(bc.back());
    std::vector<Coeff> quo(rem.size() - lb + 1, 0);
    for (std::size_t k = quo.size(); k-- > 0;) {
        Coeff q = f.mul(rem[k + lb - 1], lead_inv);
        quo[k] = q;
        if (q == 0) continue;
        for (std::size_t i = 0; i < lb; ++i) rem[k + i] = f.sub(rem[k + i], f.mul(q, bc[i]));
        tl_field_ops += lb;
    }
    rem.resize(lb - 1);
    return {Poly(f, std::move(quo)), Poly(f, std::move(rem))};
}

Poly poly_divide_exact(const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw ExactnessError("poly_divide_exact: nonzero remainder");
    return q;
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(a.field().inv(a.leading_coeff()));
}

std::uint64_t field_op_count() noexcept { return tl_field_ops; }
void add_field_ops(std::uint64_t n) noexcept { tl_field_ops += n; }

} // namespace pmrank
