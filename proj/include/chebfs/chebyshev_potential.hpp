#pragma once

// Chebyshev potentials of Fubini-Study potentials on the simplex
//
//   c[phi_P](alpha) = sum_i a_i log(a_i / mu_i(P)),
//
// a = (alpha_0, ..., alpha_{n-1}, 1 - sum alpha), together with the finite-m
// approximants (1/m) log ||Ch_{m, alpha_m}||^2 they are the limit of.

#include <cstdint>
#include <random>
#include <vector>

#include "chebfs/linalg_hermitian.hpp"
#include "chebfs/okounkov_simplex.hpp"

namespace chebfs {

class ChebyshevPotentialFS {
 public:
  // Throws InvalidInputError unless every mu_i > 0.
  explicit ChebyshevPotentialFS(RVector mu);
  static ChebyshevPotentialFS of(const PosDefHermitian& p);

  int n() const { return static_cast<int>(mu_.size()) - 1; }
  const RVector& mu() const { return mu_; }

 private:
  RVector mu_;
};

// Closed form on the closed simplex, with 0 log 0 = 0. Throws DomainError
// outside it.
double cheb_closed_form(const ChebyshevPotentialFS& pot, const SimplexPoint& alpha);

// Nearest degree-m lattice point to m * alpha in l1 distance on the first n
// coordinates; ties go to the lex-greater point, so n = 1 matches std::round.
MultiIndex round_to_lattice(const SimplexPoint& alpha, int m);

// (1/m) log of the squared Chebyshev norm at round_to_lattice(alpha, m),
// from the closed-form section norms.
double cheb_finite_m(const PosDefHermitian& p, int m, const SimplexPoint& alpha);

// Same quantity through gram_exact and chebyshev_norms.
double cheb_finite_m_gram(const PosDefHermitian& p, int m,
                          const SimplexPoint& alpha);

struct ConvergenceRow {
  int m = 0;
  double value = 0.0;         // cheb_finite_m
  double lattice_alpha0 = 0;  // first coordinate of the rounded point / m
  double defect = 0.0;          // |value - c(alpha)|
  // |value - c(alpha_m)|, alpha_m the rounded lattice point scaled by 1/m.
  double lattice_defect = 0.0;
  double rate_ratio = 0.0;      // defect * m / log m
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double fitted_constant = 0.0;  // max rate_ratio over the two largest m
  // Every row satisfies defect <= 2 * fitted_constant * log(m) / m.
  bool rate_validated = false;
  bool strictly_decreasing = false;
};

// ms must be strictly increasing, each >= 2.
ConvergenceReport convergence_report(const PosDefHermitian& p,
                                     const SimplexPoint& alpha,
                                     const std::vector<int>& ms);

struct AffineVerdict {
  bool affine = false;
  // Per alpha: max |normalized second difference| of t -> c(alpha, t).
  std::vector<double> defects;
};

// ts: at least three, uniformly spaced.
AffineVerdict affine_in_t_test(const FSGeodesicPath& path,
                               const std::vector<SimplexPoint>& alphas,
                               const std::vector<double>& ts, double tol = 1e-6);

struct ConvexityReport {
  bool passed = false;
  int trials = 0;
  int failures = 0;
  // min over trials of lambda c(a) + (1 - lambda) c(b) - c(lambda a + ...).
  double worst_slack = 0.0;
};

ConvexityReport convexity_sample_check(const ChebyshevPotentialFS& pot,
                                       int trials, std::uint64_t seed);

struct LegendreCheck {
  double closed_form = 0.0;
  double legendre = 0.0;
  double gap = 0.0;
  int iterations = 0;
};

// sup_y <alpha, y> - log(d_n + sum_j d_j e^{y_j}) by damped Newton, against
// the closed form with mu = d. Throws AccuracyError without convergence.
LegendreCheck toric_legendre_check(const RVector& d, const SimplexPoint& alpha);

// Uniform samples from the open simplex, deterministic in the seed.
class SimplexSampler {
 public:
  SimplexSampler(int n, std::uint64_t seed);
  SimplexPoint next();
  double uniform();  // in (0, 1)

 private:
  int n_;
  std::mt19937_64 engine_;
};

}  // namespace chebfs
