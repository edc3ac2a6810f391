#pragma once

#include "pmrank/poly_matrix.hpp"

namespace pmrank {

/// Basis of the left approximant module {p : p F = 0 mod x^order}.
struct OrderBasisResult {
    PolyMatrix basis; // m x m, shift-ordered weak Popov, s-pivot index (1, ..., m)
    std::size_t order;
    Shift shift;
};

/// Order-by-order elimination. At each (order, column) step the row with the
/// smallest shifted degree among rows with a nonzero residual coefficient
/// (ties: smallest index) clears the others and is multiplied by x. The rows
/// keep their pivot on the diagonal throughout.
///
/// `s` is indexed by the rows of F (the columns of the basis); tau >= 1.
OrderBasisResult approximant_basis(const PolyMatrix& F, std::size_t tau, const Shift& s);

/// Same contract; splits the order in halves and multiplies the two bases,
/// falling back to approximant_basis at tau <= dac_crossover.
OrderBasisResult approximant_basis_dac(const PolyMatrix& F, std::size_t tau, const Shift& s,
                                       std::size_t dac_crossover = 16);

} // namespace pmrank
