#include "chebfs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "chebfs/errors.hpp"

namespace chebfs {

namespace {

// Truncation point of the tanh-sinh parameter; node weights there are below
// 1e-15 of the central weight.
constexpr double kTanhSinhSpan = 3.2;

struct TanhSinhNode {
  double offset;  // distance from the nearer endpoint
  bool right;     // nearer endpoint is b
  double weight;
};

std::vector<TanhSinhNode> tanh_sinh_nodes(double length, int points) {
  if (points < 2) throw InvalidInputError("tanh-sinh rule needs at least 2 points");
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidInputError("integration interval must be finite and nonempty");
  }
  const int half = points / 2;
  const double h = kTanhSinhSpan / half;
  std::vector<TanhSinhNode> out;
  out.reserve(2 * half + 1);
  for (int k = -half; k <= half; ++k) {
    const double t = k * h;
    const double x = std::numbers::pi / 2 * std::sinh(t);
    const double offset = length / (1.0 + std::exp(2.0 * std::abs(x)));
    if (!(offset > 0.0)) continue;
    const double cx = std::cosh(x);
    const double weight =
        h * (length / 2) * (std::numbers::pi / 2) * std::cosh(t) / (cx * cx);
    out.push_back({offset, k > 0, weight});
  }
  return out;
}

}  // namespace

QuadratureRule tanh_sinh(double a, double b, int points) {
  QuadratureRule rule;
  for (const auto& node : tanh_sinh_nodes(b - a, points)) {
    rule.nodes.push_back(node.right ? b - node.offset : a + node.offset);
    rule.weights.push_back(node.weight);
  }
  return rule;
}

QuadratureRule half_line_rule(int points) {
  QuadratureRule rule;
  for (const auto& node : tanh_sinh_nodes(std::numbers::pi / 2, points)) {
    // tan(pi/2 - d) = 1 / tan(d) keeps full precision near the far endpoint.
    const double r =
        node.right ? 1.0 / std::tan(node.offset) : std::tan(node.offset);
    if (!std::isfinite(r)) continue;
    rule.nodes.push_back(r);
    rule.weights.push_back(node.weight * (1.0 + r * r));
  }
  return rule;
}

QuadratureRule periodic_trapezoid(int points) {
  if (points < 1) throw InvalidInputError("trapezoid rule needs at least 1 point");
  QuadratureRule rule;
  const double w = 2 * std::numbers::pi / points;
  for (int k = 0; k < points; ++k) {
    rule.nodes.push_back(k * w);
    rule.weights.push_back(w);
  }
  return rule;
}

int chart_worker_count() {
  if (const char* env = std::getenv("CHEBFS_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return std::min(v, 256);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::vector<Complex> integrate_chart(int n, int radial_nodes, int angular_nodes,
                                     std::size_t dim,
                                     const ChartIntegrand& integrand) {
  if (n != 1 && n != 2) {
    throw InvalidInputError("chart quadrature supports n = 1 and n = 2 only");
  }
  if (radial_nodes < 2 || angular_nodes < 1) {
    throw InvalidInputError("chart quadrature: too few nodes");
  }
  const QuadratureRule radial = half_line_rule(radial_nodes);
  const QuadratureRule angular = periodic_trapezoid(angular_nodes);
  const std::size_t chunks = radial.nodes.size();
  std::vector<std::vector<Complex>> partial(chunks, std::vector<Complex>(dim));

  auto run_chunk = [&](std::size_t i0) {
    std::vector<Complex>& acc = partial[i0];
    double r[2] = {radial.nodes[i0], 0.0};
    double th[2] = {0.0, 0.0};
    ChartPoint z{std::vector<Complex>(n)};
    const double w0 = radial.weights[i0] * r[0];
    if (n == 1) {
      for (std::size_t a0 = 0; a0 < angular.nodes.size(); ++a0) {
        th[0] = angular.nodes[a0];
        z.z[0] = std::polar(r[0], th[0]);
        integrand(ChartNode{z, {r, 1}, {th, 1}, w0 * angular.weights[a0]}, acc);
      }
      return;
    }
    for (std::size_t i1 = 0; i1 < radial.nodes.size(); ++i1) {
      r[1] = radial.nodes[i1];
      const double w1 = w0 * radial.weights[i1] * r[1];
      for (std::size_t a0 = 0; a0 < angular.nodes.size(); ++a0) {
        th[0] = angular.nodes[a0];
        z.z[0] = std::polar(r[0], th[0]);
        for (std::size_t a1 = 0; a1 < angular.nodes.size(); ++a1) {
          th[1] = angular.nodes[a1];
          z.z[1] = std::polar(r[1], th[1]);
          integrand(ChartNode{z, {r, 2}, {th, 2},
                              w1 * angular.weights[a0] * angular.weights[a1]},
                    acc);
        }
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(chart_worker_count(), chunks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < chunks; ++i) run_chunk(i);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < chunks; i += workers) run_chunk(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<Complex> total(dim);
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < dim; ++k) total[k] += p[k];
  }
  return total;
}

ChartIntegral integrate_chart_estimated(int n, const ChartScheme& scheme,
                                        std::size_t dim,
                                        const ChartIntegrand& integrand) {
  ChartIntegral out;
  out.value = integrate_chart(n, scheme.radial_nodes, scheme.angular_nodes, dim,
                              integrand);
  const auto coarse =
      integrate_chart(n, std::max(2, scheme.radial_nodes / 2),
                      std::max(1, scheme.angular_nodes / 2), dim, integrand);
  double scale = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    out.error_estimate =
        std::max(out.error_estimate, std::abs(out.value[k] - coarse[k]));
    scale = std::max(scale, std::abs(out.value[k]));
  }
  out.error_estimate = std::max(out.error_estimate, 1e-14 * scale);
  if (out.error_estimate > scheme.tolerance) {
    throw AccuracyError("chart quadrature error estimate " +
                        std::to_string(out.error_estimate) +
                        " exceeds the requested tolerance");
  }
  return out;
}

}  // namespace chebfs
