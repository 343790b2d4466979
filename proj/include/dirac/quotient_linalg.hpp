#ifndef DIRAC_QUOTIENT_LINALG_HPP
#define DIRAC_QUOTIENT_LINALG_HPP

#include <vector>

#include "dirac/certificate.hpp"
#include "dirac/groebner.hpp"
#include "dirac/localized.hpp"

namespace dirac {

/// Matrix of polynomials considered modulo a constraint ideal. Entries are
/// stored as normal forms; a null modulus means the zero ideal.
struct QuotientMatrix {
    std::vector<std::vector<PhasePoly>> entries;
    const GroebnerBasis* modulus = nullptr;

    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
};

QuotientMatrix make_quotient_matrix(std::vector<std::vector<PhasePoly>> raw,
                                    const GroebnerBasis* modulus);

bool weakly_zero(const PhasePoly& p, const GroebnerBasis* modulus);

/// Generic rank via fraction-free (Bareiss) elimination with NF-based zero
/// tests; every pivot used is recorded in the certificate.
int matrix_rank_mod(const QuotientMatrix& M, const Ring& ring, Certificate& cert);

/// Basis of the generic kernel, denominator-cleared to polynomial vectors and
/// content-normalised. M*v == 0 mod modulus is re-verified for every vector.
std::vector<std::vector<PhasePoly>> null_space_mod(const QuotientMatrix& M, const Ring& ring,
                                                   Certificate& cert);

/// Kernel of the linear map defined by stacking the vectors of P row-wise.
/// |result| = ambient - |P|; rank deficiency of P is an error.
std::vector<std::vector<PhasePoly>> complement_space(
    const std::vector<std::vector<PhasePoly>>& P, std::size_t ambient,
    const GroebnerBasis* modulus, const Ring& ring, Certificate& cert);

/// Adjugate/determinant representation of the inverse: C * adj == det * I
/// identically, so C^{-1} = adj/det wherever det is a unit.
struct MatrixInverse {
    std::vector<std::vector<PhasePoly>> adj;
    PhasePoly det;
};

MatrixInverse matrix_inverse_mod(const QuotientMatrix& C, const Ring& ring, Certificate& cert);

/// Exact determinant of a polynomial matrix (no modulus semantics).
PhasePoly det_exact(const std::vector<std::vector<PhasePoly>>& A, const Ring& ring,
                    const OrderPtr& order);

/// Solves C x = rhs over the quotient field for a matrix that is invertible
/// modulo the ideal. Pivot divisions land in the certificate; a weakly
/// singular matrix is an error.
std::vector<LocalizedExpression> solve_square_mod(const std::vector<std::vector<PhasePoly>>& C,
                                                  const std::vector<PhasePoly>& rhs,
                                                  const GroebnerBasis* modulus, const Ring& ring,
                                                  Certificate& cert);

} // namespace dirac

#endif
