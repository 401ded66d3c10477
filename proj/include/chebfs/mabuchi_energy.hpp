#pragma once

// Aubin-Mabuchi energy of Fubini-Study potentials, two ways.
//
// Chart side:
//   E(phi_0, phi_1) = 1/(n+1) sum_j \int (phi_0 - phi_1)
//                     (dd^c phi_0)^j ^ (dd^c phi_1)^{n-j},
// with dd^c scaled so that \int (dd^c phi)^n = 1.
//
// Okounkov side:
//   n! \int_simplex (c[phi_0] - c[phi_1]) dalpha
//     = 1/(n+1) sum_i (log mu_i(P1) - log mu_i(P0)),
// exact because the entropy terms cancel. The two agree up to a sign that is
// calibrated, not assumed.

#include <vector>

#include "chebfs/linalg_hermitian.hpp"
#include "chebfs/quadrature.hpp"

namespace chebfs {

struct ChartEnergy {
  double value = 0.0;
  double error_estimate = 0.0;
};

// n <= 2. Throws AccuracyError when the quadrature estimate exceeds
// scheme.tolerance or the volume normalization check fails.
ChartEnergy energy_chart(const PosDefHermitian& p0, const PosDefHermitian& p1,
                         const ChartScheme& scheme = {});

double energy_okounkov(const PosDefHermitian& p0, const PosDefHermitian& p1);

// Sign s in {+1, -1} with energy_chart = s * energy_okounkov, found from the
// probe pair (I, e I) in dimension n.
int calibrate_energy_sign(int n, const ChartScheme& scheme = {});

struct EnergyReport {
  double chart_value = 0.0;
  double okounkov_value = 0.0;
  int sign = 0;
  double gap = 0.0;  // |chart_value - sign * okounkov_value|
  double quadrature_error_estimate = 0.0;
};

EnergyReport energy_report(const PosDefHermitian& p0, const PosDefHermitian& p1,
                           const ChartScheme& scheme = {});

// Max |second difference| / h^2 of t -> energy_okounkov(P(0), P(t)) over
// at least three uniformly spaced times.
double energy_affine_along_geodesic(const FSGeodesicPath& path,
                                    const std::vector<double>& ts);

// Mixed discriminants of two n x n Hermitian matrices (n <= 2): entry j is the
// coefficient D_j with D_j(M, M) = det M that multiplies
// (dd^c phi_0)^j ^ (dd^c phi_1)^{n-j}.
std::vector<double> mixed_discriminants(const Matrix& m0, const Matrix& m1);

}  // namespace chebfs
