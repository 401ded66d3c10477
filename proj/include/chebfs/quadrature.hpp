#pragma once

// Deterministic quadrature over the affine chart C^n (n = 1, 2) in polar
// coordinates: tanh-sinh in the radius after r = tan(u), periodic trapezoid
// in each angle.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "chebfs/fs_potentials.hpp"

namespace chebfs {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Tanh-sinh rule on [a, b] with `points` nodes (rounded up to odd).
QuadratureRule tanh_sinh(double a, double b, int points);

// Rule for integrals over [0, inf): tanh-sinh in u on [0, pi/2], r = tan u,
// weights include dr/du = 1 + r^2.
QuadratureRule half_line_rule(int points);

// theta_k = 2 pi k / points, weight 2 pi / points.
QuadratureRule periodic_trapezoid(int points);

struct ChartScheme {
  int radial_nodes = 200;
  int angular_nodes = 64;
  // Requested accuracy; an error estimate above it raises AccuracyError.
  double tolerance = 1e-6;
};

struct ChartNode {
  const ChartPoint& z;
  std::span<const double> radius;
  std::span<const double> angle;
  // Product weight for the Lebesgue measure dA = r dr dtheta per coordinate.
  double weight;
};

// Adds weight * f(node) into acc.
using ChartIntegrand =
    std::function<void(const ChartNode& node, std::span<Complex> acc)>;

// Single-rule integral of a `dim`-vector-valued integrand over C^n. The
// outer radial index is the unit of work; partial sums are reduced in index
// order, so the result does not depend on the worker count.
std::vector<Complex> integrate_chart(int n, int radial_nodes, int angular_nodes,
                                     std::size_t dim,
                                     const ChartIntegrand& integrand);

struct ChartIntegral {
  std::vector<Complex> value;
  // max |fine - coarse| over components, floored at a roundoff level.
  double error_estimate = 0.0;
};

// Integrates with the scheme and with a halved scheme; throws AccuracyError
// when the estimate exceeds scheme.tolerance. Only n = 1, 2 are supported.
ChartIntegral integrate_chart_estimated(int n, const ChartScheme& scheme,
                                        std::size_t dim,
                                        const ChartIntegrand& integrand);

// Worker count read from CHEBFS_THREADS (default 1).
int chart_worker_count();

}  // namespace chebfs
