#pragma once

// Bergman geodesics between Fubini-Study endpoints.
//
// H_{m,P}(s, t) = \int s conj(t) e^{-m phi_P} (i ddbar phi_P)^n / n!, with the
// normalization under which H_{m,I}(z^I, z^J) = (2 pi)^n delta_IJ B(I + 1).
// Because (i ddbar phi_P)^n / n! has chart density det P / (z^* P z)^{n+1},
// H_{m,P} = (2 pi)^n det(P) * gram_exact(P, m).

#include <vector>

#include "chebfs/fs_potentials.hpp"
#include "chebfs/hilb_gram.hpp"

namespace chebfs {

GramMatrix hilb_endpoint_gram(const PosDefHermitian& p, int m);

struct BergmanSpectrum {
  int n = 0;
  int m = 0;
  std::vector<MultiIndex> basis;
  // Row j holds the coefficients of s_{m,j} over `basis`. The rows are
  // H_{m,0}-orthonormal and H_{m,1}(s_j, s_j) = e^{-lambda_j}.
  Matrix sections;
  RVector lambdas;  // descending
};

BergmanSpectrum bergman_spectrum(const PosDefHermitian& p0,
                                 const PosDefHermitian& p1, int m);

// (1/m) log sum_j e^{lambda_j t} |s_{m,j}(z)|^2, by log-sum-exp.
double bergman_geodesic_eval(const BergmanSpectrum& spec, double t,
                             const ChartPoint& z);

// (1/m) log((n+m)!/m!) - (n/m) log 2 pi: the exact offset between the
// Bergman geodesic and phi_{e^{tD}} for diagonal endpoints.
double bergman_offset(int n, int m);

struct ChartGrid {
  int t_count = 11;    // uniform in [0, 1]
  int z_count = 11;    // points with |z| in [0, radius]
  double radius = 3.0;
};

// Deterministic sample points of the grid in C^n.
std::vector<ChartPoint> chart_grid_points(int n, const ChartGrid& grid);

struct BergmanExactness {
  double max_defect = 0.0;  // max |phi_m - phi_{e^{tD}} - offset|
  double mean_offset = 0.0; // mean of phi_m - phi_{e^{tD}} over the grid
  double expected_offset = 0.0;
};

// Endpoints P0 = I, P1 = e^D.
BergmanExactness bergman_exactness(const RVector& d, int m, const ChartGrid& grid = {});
double bergman_exactness_defect(const RVector& d, int m, const ChartGrid& grid = {});

}  // namespace chebfs
