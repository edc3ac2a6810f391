#include "pmrank/order_basis.hpp"

#include "pmrank/errors.hpp"

#include <string>

namespace pmrank {

namespace {

void check_args(const PolyMatrix& F, std::size_t tau, const Shift& s, const char* who) {
    if (tau == 0) throw UsageError(std::string(who) + ": order must be positive");
    if (s.size() != F.rows())
        throw UsageError(std::string(who) + ": shift has length " + std::to_string(s.size()) +
                         ", matrix has " + std::to_string(F.rows()) + " rows");
}

} // namespace

OrderBasisResult approximant_basis(const PolyMatrix& F, std::size_t tau, const Shift& s) {
    check_args(F, tau, s, "approximant_basis");
    const FieldSpec& f = F.field();
    const std::size_t m = F.rows(), n = F.cols();

    PolyMatrix A = PolyMatrix::identity(f, m);
    PolyMatrix res = truncate(F, tau);
    std::vector<std::int64_t> sdeg(s.begin(), s.end());

    std::vector<std::size_t> active;
    std::vector<Coeff> lead;
    for (std::size_t k = 0; k < tau; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            active.clear();
            lead.clear();
            for (std::size_t i = 0; i < m; ++i) {
                if (Coeff c = res(i, j).coeff(k)) {
                    active.push_back(i);
                    lead.push_back(c);
                }
            }
            if (active.empty()) continue;

            std::size_t best = 0;
            for (std::size_t a = 1; a < active.size(); ++a)
                if (sdeg[active[a]] < sdeg[active[best]]) best = a;
            const std::size_t piv = active[best];
            const Coeff inv = f.inv(lead[best]);

            for (std::size_t a = 0; a < active.size(); ++a) {
                if (a == best) continue;
                const std::size_t i = active[a];
                const Coeff factor = f.neg(f.mul(lead[a], inv));
                for (std::size_t c = 0; c < m; ++c) A(i, c).add_scaled(A(piv, c), factor);
                for (std::size_t c = 0; c < n; ++c) res(i, c).add_scaled(res(piv, c), factor);
            }
            for (std::size_t c = 0; c < m; ++c) A(piv, c) = A(piv, c).shifted_up(1);
            for (std::size_t c = 0; c < n; ++c) res(piv, c) = poly_truncate(res(piv, c).shifted_up(1), tau);
            ++sdeg[piv];
        }
    }
    return {std::move(A), tau, s};
}

OrderBasisResult approximant_basis_dac(const PolyMatrix& F, std::size_t tau, const Shift& s,
                                       std::size_t dac_crossover) {
    check_args(F, tau, s, "approximant_basis_dac");
    if (tau <= std::max<std::size_t>(dac_crossover, 1)) return approximant_basis(F, tau, s);

    const std::size_t tau1 = tau / 2;
    OrderBasisResult first = approximant_basis_dac(F, tau1, s, dac_crossover);
    PolyMatrix residual = divide_exact_xpow(truncate(matmul(first.basis, truncate(F, tau)), tau), tau1);
    Shift t = to_shift(rdeg_shifted(first.basis, s));
    OrderBasisResult second = approximant_basis_dac(residual, tau - tau1, t, dac_crossover);
    return {matmul(second.basis, first.basis), tau, s};
}

} // namespace pmrank
