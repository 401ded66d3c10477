#pragma once

// Gram matrices of the monomial basis {z^I : |I| = m} of H^0(P^n, mH) under
//
//   <s, t> = pi^{-n} \int_{C^n} s(z) conj(t(z)) (z^* P z)^{-(m+n+1)} dA(z),
//
// i.e. weight e^{-m phi_P} against the volume form
// (i/2pi)^n dz dzbar / (z^* P z)^{n+1}, and the Chebyshev sections obtained
// by orthogonalizing that basis in lex order.

#include <vector>

#include "chebfs/linalg_hermitian.hpp"
#include "chebfs/okounkov_simplex.hpp"
#include "chebfs/quadrature.hpp"

namespace chebfs {

// Largest basis the Gram routines accept.
inline constexpr std::size_t kMaxGramBasis = 5000;

struct GramMatrix {
  int n = 0;
  int m = 0;
  std::vector<MultiIndex> basis;  // lattice_points(n, m)
  Matrix entries;                 // entries(I, J) = <z^I, z^J>

  // Position of I in `basis`; throws InvalidInputError if absent.
  int position(const MultiIndex& index) const;
};

struct GramEstimate {
  GramMatrix gram;
  double error_estimate = 0.0;
};

// Coefficients of (L z)^I in the monomial basis, one row per basis element,
// for L lower unitriangular. Upper unitriangular in lex order.
Matrix monomial_transition(const Matrix& unit_lower, int m);

GramMatrix gram_exact(const PosDefHermitian& p, int m);

// Same integral by chart quadrature; n <= 2.
GramEstimate gram_numeric(const PosDefHermitian& p, int m,
                          const ChartScheme& scheme = {});

// I! / ((m+n)! prod_j mu_j^{I_j+1}), from the mu-vector.
double section_norm_closed_form(const RVector& mu, const MultiIndex& index);
double section_norm_closed_form(const PosDefHermitian& p, const MultiIndex& index);

// Squared norms of the Chebyshev sections, in basis order.
RVector chebyshev_norms(const GramMatrix& g);

struct ChebyshevSection {
  MultiIndex alpha_index;
  CVector coeffs;  // over g.basis; 1 at alpha_index, 0 before it
  double norm_sq = 0.0;
};

ChebyshevSection chebyshev_section_coeffs(const GramMatrix& g,
                                          const MultiIndex& index);

// All Chebyshev sections at once, in basis order.
std::vector<ChebyshevSection> chebyshev_sections(const GramMatrix& g);

// <s, t> for coefficient vectors over g.basis.
Complex gram_inner(const GramMatrix& g, const CVector& s, const CVector& t);

// log B(x_0, ..., x_k) = sum log Gamma(x_i) - log Gamma(sum x_i).
double log_multivariate_beta(std::span<const double> x);

}  // namespace chebfs
