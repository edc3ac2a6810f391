#pragma once

#include "pmrank/oracle.hpp"
#include "pmrank/pmx.hpp"
#include "pmrank/poly_matrix.hpp"

#include <random>
#include <sstream>
#include <string>

namespace testing {

using namespace pmrank;

/// Rows separated by '|', entries by ';', coefficients low-to-high.
inline PolyMatrix mat(std::uint64_t p, std::size_t m, std::size_t n, const std::string& rows) {
    std::ostringstream s;
    s << "# pmx v1\nmodulus " << p << "\ndims " << m << ' ' << n << '\n';
    for (char c : rows) s << (c == '|' ? '\n' : c);
    s << '\n';
    return parse_pmx(s.str());
}

inline std::string fixture_path(const std::string& name) { return std::string(PMRANK_FIXTURE_DIR) + "/" + name; }

inline PolyMatrix running_example() { return read_pmx_file(fixture_path("paper_f2_5x5.pmx")); }

inline Shift example_shift() { return {8, 5, 2, 8, 4}; }

inline PolyMatrix random_matrix(const FieldSpec& f, std::size_t m, std::size_t n, std::size_t d, std::mt19937_64& rng) {
    PolyMatrix F(f, m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) F(i, j) = oracle::random_poly(f, d, rng);
    return F;
}

inline Shift random_shift(std::size_t n, std::int64_t lo, std::int64_t hi, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> dist(lo, hi);
    std::vector<std::int64_t> v(n);
    for (auto& x : v) x = dist(rng);
    return Shift(std::move(v));
}

/// Random s-ordered weak Popov k x n matrix: strictly increasing pivot
/// indices, random pivot degrees in [0, dmax], other entries random below
/// the bound dictated by the pivot.
inline PolyMatrix random_weak_popov(const FieldSpec& f, std::size_t k, const Shift& s, std::size_t dmax,
                                    std::mt19937_64& rng) {
    const std::size_t n = s.size();
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = j;
    std::shuffle(cols.begin(), cols.end(), rng);
    cols.resize(k);
    std::sort(cols.begin(), cols.end());
    PolyMatrix P(f, k, n);
    std::uniform_int_distribution<std::size_t> ddist(0, dmax);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t pi = cols[i];
        const std::int64_t delta = static_cast<std::int64_t>(ddist(rng));
        for (std::size_t j = 0; j < n; ++j) {
            if (j == pi) {
                const Poly lead = Poly::monomial(f, 1 + static_cast<Coeff>(rng() % (f.modulus() - 1)),
                                                 static_cast<std::size_t>(delta));
                P(i, j) = delta > 0 ? lead + oracle::random_poly(f, static_cast<std::size_t>(delta - 1), rng) : lead;
                continue;
            }
            std::int64_t bound = delta + s[pi] - s[j] - (j > pi ? 1 : 0);
            if (bound < 0 || rng() % 3 == 0) continue;
            bound = std::min<std::int64_t>(bound, static_cast<std::int64_t>(dmax) + 2);
            P(i, j) = oracle::random_poly(f, static_cast<std::size_t>(bound), rng);
        }
    }
    return P;
}

/// Random nonsingular instance of rank r with a fresh seed from rng.
inline PolyMatrix random_rank(std::uint64_t p, std::size_t m, std::size_t n, std::size_t r, std::size_t d,
                              std::mt19937_64& rng) {
    return oracle::random_instance({m, n, r, d, p, rng()});
}

} // namespace testing

namespace testing {

/// dim_K of K[x]^m / {p : p F = 0 mod x^tau}, as the rank of the linear map
/// p -> p F mod x^tau on vectors of polynomials of degree < tau.
inline std::size_t approximant_index_bruteforce(const PolyMatrix& F, std::size_t tau) {
    const std::size_t m = F.rows(), n = F.cols();
    ConstMatrix L(F.field(), m * tau, n * tau);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < tau; ++k)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l + k < tau; ++l) L(i * tau + k, j * tau + l + k) = F(i, j).coeff(l);
    return const_rank(L);
}

/// Degree of det A for a reduced square matrix: the sum of its pivot degrees.
inline std::int64_t pivot_degree_sum(const PolyMatrix& A, const Shift& s) {
    std::int64_t total = 0;
    for (const auto& p : pivot_profile(A, s)) total += p->degree;
    return total;
}

} // namespace testing
