#include "chebfs/chebyshev_potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chebfs/errors.hpp"
#include "chebfs/hilb_gram.hpp"

namespace chebfs {

namespace {

double xlogx_over(double x, double mu) {
  return x > 0.0 ? x * std::log(x / mu) : 0.0;
}

void require_dimension(const ChebyshevPotentialFS& pot, const SimplexPoint& a) {
  if (pot.n() != a.n()) {
    throw InvalidInputError("simplex point dimension does not match the potential");
  }
}

}  // namespace

ChebyshevPotentialFS::ChebyshevPotentialFS(RVector mu) : mu_(std::move(mu)) {
  if (mu_.size() < 2) throw InvalidInputError("mu-vector needs at least two entries");
  for (Eigen::Index i = 0; i < mu_.size(); ++i) {
    if (!(mu_(i) > 0.0) || !std::isfinite(mu_(i))) {
      throw InvalidInputError("mu-vector entries must be positive and finite");
    }
  }
}

ChebyshevPotentialFS ChebyshevPotentialFS::of(const PosDefHermitian& p) {
  return ChebyshevPotentialFS(mu_vector(p));
}

double cheb_closed_form(const ChebyshevPotentialFS& pot, const SimplexPoint& alpha) {
  require_dimension(pot, alpha);
  if (!simplex_closed_contains(alpha)) {
    throw DomainError("alpha lies outside the simplex");
  }
  const int n = pot.n();
  double value = 0.0;
  for (int i = 0; i < n; ++i) {
    value += xlogx_over(std::max(alpha.alpha[i], 0.0), pot.mu()(i));
  }
  value += xlogx_over(std::max(alpha.remainder(), 0.0), pot.mu()(n));
  return value;
}

MultiIndex round_to_lattice(const SimplexPoint& alpha, int m) {
  if (m < 1) throw InvalidInputError("m must be >= 1");
  if (alpha.n() < 1) throw InvalidInputError("empty simplex point");
  if (!simplex_closed_contains(alpha)) {
    throw DomainError("alpha lies outside the simplex");
  }
  const double tie = 1e-12 * m;
  const std::vector<MultiIndex> points = lattice_points(alpha.n(), m);
  const MultiIndex* best = nullptr;
  double best_distance = std::numeric_limits<double>::infinity();
  for (const auto& point : points) {
    double distance = 0.0;
    for (int i = 0; i < alpha.n(); ++i) {
      distance += std::abs(point[i] - m * alpha.alpha[i]);
    }
    // Points arrive in lex order, so ties go to the lex-greater point, the
    // one std::round picks for n = 1.
    if (distance < best_distance + tie) {
      best_distance = distance;
      best = &point;
    }
  }
  return *best;
}

double cheb_finite_m(const PosDefHermitian& p, int m, const SimplexPoint& alpha) {
  if (p.order() != alpha.n() + 1) {
    throw InvalidInputError("simplex point dimension does not match the matrix");
  }
  const MultiIndex index = round_to_lattice(alpha, m);
  return std::log(section_norm_closed_form(mu_vector(p), index)) / m;
}

double cheb_finite_m_gram(const PosDefHermitian& p, int m,
                          const SimplexPoint& alpha) {
  if (p.order() != alpha.n() + 1) {
    throw InvalidInputError("simplex point dimension does not match the matrix");
  }
  const MultiIndex index = round_to_lattice(alpha, m);
  const GramMatrix g = gram_exact(p, m);
  return std::log(chebyshev_norms(g)(g.position(index))) / m;
}

ConvergenceReport convergence_report(const PosDefHermitian& p,
                                     const SimplexPoint& alpha,
                                     const std::vector<int>& ms) {
  if (ms.size() < 2) throw InvalidInputError("need at least two levels m");
  for (std::size_t k = 0; k < ms.size(); ++k) {
    if (ms[k] < 2 || (k > 0 && ms[k] <= ms[k - 1])) {
      throw InvalidInputError("levels m must be >= 2 and strictly increasing");
    }
  }
  const ChebyshevPotentialFS pot = ChebyshevPotentialFS::of(p);
  const double limit = cheb_closed_form(pot, alpha);

  ConvergenceReport report;
  for (int m : ms) {
    const MultiIndex index = round_to_lattice(alpha, m);
    SimplexPoint lattice{std::vector<double>(alpha.n())};
    for (int i = 0; i < alpha.n(); ++i) {
      lattice.alpha[i] = static_cast<double>(index[i]) / m;
    }
    ConvergenceRow row;
    row.m = m;
    row.value = std::log(section_norm_closed_form(pot.mu(), index)) / m;
    row.lattice_alpha0 = lattice.alpha[0];
    row.defect = std::abs(row.value - limit);
    row.lattice_defect = std::abs(row.value - cheb_closed_form(pot, lattice));
    row.rate_ratio = row.defect * m / std::log(m);
    report.rows.push_back(row);
  }

  const auto& rows = report.rows;
  report.fitted_constant =
      std::max(rows[rows.size() - 1].rate_ratio, rows[rows.size() - 2].rate_ratio);
  report.rate_validated = std::all_of(rows.begin(), rows.end(), [&](const auto& r) {
    return r.defect <= 2.0 * report.fitted_constant * std::log(r.m) / r.m;
  });
  report.strictly_decreasing = true;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (!(rows[k].defect < rows[k - 1].defect)) report.strictly_decreasing = false;
  }
  return report;
}

AffineVerdict affine_in_t_test(const FSGeodesicPath& path,
                               const std::vector<SimplexPoint>& alphas,
                               const std::vector<double>& ts, double tol) {
  if (ts.size() < 3) throw InvalidInputError("need at least three times");
  if (!(tol > 0.0)) throw InvalidInputError("tolerance must be positive");
  const double h = ts[1] - ts[0];
  if (!(h > 0.0)) throw InvalidInputError("times must be increasing");
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if (std::abs((ts[k] - ts[k - 1]) - h) > 1e-9 * h) {
      throw InvalidInputError("times must be uniformly spaced");
    }
  }

  std::vector<ChebyshevPotentialFS> pots;
  pots.reserve(ts.size());
  for (double t : ts) pots.push_back(ChebyshevPotentialFS::of(path_eval(path, t)));

  AffineVerdict verdict;
  verdict.affine = true;
  for (const auto& alpha : alphas) {
    std::vector<double> f;
    f.reserve(ts.size());
    for (const auto& pot : pots) f.push_back(cheb_closed_form(pot, alpha));
    double defect = 0.0;
    for (std::size_t k = 1; k + 1 < f.size(); ++k) {
      defect = std::max(defect, std::abs(f[k + 1] - 2 * f[k] + f[k - 1]) / (h * h));
    }
    verdict.defects.push_back(defect);
    if (!(defect <= tol)) verdict.affine = false;
  }
  return verdict;
}

SimplexSampler::SimplexSampler(int n, std::uint64_t seed) : n_(n), engine_(seed) {
  if (n < 1) throw InvalidInputError("sampler dimension must be >= 1");
}

double SimplexSampler::uniform() {
  // 53 random bits, shifted off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

SimplexPoint SimplexSampler::next() {
  // Normalized exponentials are uniform on the simplex.
  std::vector<double> e(n_ + 1);
  double total = 0.0;
  for (auto& v : e) {
    v = -std::log(uniform());
    total += v;
  }
  SimplexPoint out{std::vector<double>(n_)};
  for (int i = 0; i < n_; ++i) out.alpha[i] = e[i] / total;
  return out;
}

ConvexityReport convexity_sample_check(const ChebyshevPotentialFS& pot,
                                       int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidInputError("trials must be >= 1");
  SimplexSampler sampler(pot.n(), seed);
  ConvexityReport report;
  report.trials = trials;
  report.worst_slack = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    const SimplexPoint a = sampler.next();
    const SimplexPoint b = sampler.next();
    const double lambda = sampler.uniform();
    SimplexPoint mix{std::vector<double>(pot.n())};
    for (int i = 0; i < pot.n(); ++i) {
      mix.alpha[i] = lambda * a.alpha[i] + (1 - lambda) * b.alpha[i];
    }
    const double slack = lambda * cheb_closed_form(pot, a) +
                         (1 - lambda) * cheb_closed_form(pot, b) -
                         cheb_closed_form(pot, mix);
    report.worst_slack = std::min(report.worst_slack, slack);
    if (slack < -1e-12) ++report.failures;
  }
  report.passed = report.failures == 0;
  return report;
}

LegendreCheck toric_legendre_check(const RVector& d, const SimplexPoint& alpha) {
  const int n = alpha.n();
  if (d.size() != n + 1) throw InvalidInputError("d must have length n + 1");
  if (!simplex_interior_contains(alpha, 1e-12)) {
    throw DomainError("alpha must lie in the open simplex");
  }
  const ChebyshevPotentialFS pot(d);
  const RVector a = Eigen::Map<const RVector>(alpha.alpha.data(), n);
  const RVector log_d = d.array().log();

  // F(y) = <a, y> - log(d_n + sum d_j e^{y_j}), concave.
  auto evaluate = [&](const RVector& y, RVector* p) {
    double top = log_d(n);
    for (int j = 0; j < n; ++j) top = std::max(top, log_d(j) + y(j));
    double sum = std::exp(log_d(n) - top);
    for (int j = 0; j < n; ++j) sum += std::exp(log_d(j) + y(j) - top);
    const double lse = top + std::log(sum);
    if (p) {
      p->resize(n);
      for (int j = 0; j < n; ++j) (*p)(j) = std::exp(log_d(j) + y(j) - lse);
    }
    return a.dot(y) - lse;
  };

  LegendreCheck out;
  out.closed_form = cheb_closed_form(pot, alpha);
  RVector y = RVector::Zero(n);
  RVector p;
  double value = evaluate(y, &p);
  constexpr int kMaxIterations = 200;
  for (int it = 0; it < kMaxIterations; ++it) {
    const RVector grad = a - p;
    out.iterations = it;
    if (grad.lpNorm<Eigen::Infinity>() < 1e-13) break;
    Eigen::MatrixXd curvature = -p * p.transpose();
    curvature.diagonal() += p;
    const RVector step = curvature.ldlt().solve(grad);
    // Inside the quadratic regime F no longer resolves the gain, so take
    // plain Newton steps there.
    if (grad.dot(step) < 1e-8) {
      y += step;
      value = evaluate(y, &p);
      continue;
    }
    double scale = 1.0;
    RVector trial_p;
    double trial = evaluate(y + step, &trial_p);
    while (trial < value && scale > 1e-12) {
      scale *= 0.5;
      trial = evaluate(y + scale * step, &trial_p);
    }
    if (trial < value) break;
    y += scale * step;
    value = trial;
    p = trial_p;
  }
  if (!((a - p).lpNorm<Eigen::Infinity>() < 1e-10)) {
    throw AccuracyError("Legendre maximization did not converge");
  }
  out.legendre = value;
  out.gap = std::abs(out.legendre - out.closed_form);
  return out;
}

}  // namespace chebfs
