#include "chebfs/hilb_gram.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "chebfs/errors.hpp"

namespace chebfs {

namespace {

using IndexMap = std::map<std::vector<int>, int>;

IndexMap index_map(const std::vector<MultiIndex>& basis) {
  IndexMap out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out.emplace(basis[i].exponents(), static_cast<int>(i));
  }
  return out;
}

void require_basis_size(int n, int m) {
  if (m < 1) throw InvalidInputError("section degree m must be >= 1");
  if (dim_h0(n, m) > kMaxGramBasis) {
    throw InvalidInputError("section basis exceeds the supported size");
  }
}

}  // namespace

int GramMatrix::position(const MultiIndex& index) const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] == index) return static_cast<int>(i);
  }
  throw InvalidInputError("multi-index is not in the Gram basis");
}

Matrix monomial_transition(const Matrix& unit_lower, int m) {
  const int n = static_cast<int>(unit_lower.rows()) - 1;
  require_basis_size(n, m);

  // Rows of `prev` are the expansions of (Lz)^J over the degree-(d-1) basis.
  std::vector<MultiIndex> prev_basis = lattice_points(n, 0);
  Matrix prev = Matrix::Ones(1, 1);
  for (int d = 1; d <= m; ++d) {
    std::vector<MultiIndex> basis = lattice_points(n, d);
    const IndexMap prev_index = index_map(prev_basis);
    const IndexMap index = index_map(basis);
    Matrix rows = Matrix::Zero(basis.size(), basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) {
      std::vector<int> e = basis[r].exponents();
      int j = n;
      while (e[j] == 0) --j;
      --e[j];
      const int parent = prev_index.at(e);
      // (Lz)^I = (Lz)^{I - e_j} * t_j with t_j = sum_{k <= j} L_jk s_k.
      for (std::size_t c = 0; c < prev_basis.size(); ++c) {
        const Complex coef = prev(parent, c);
        if (coef == Complex{}) continue;
        std::vector<int> mono = prev_basis[c].exponents();
        for (int k = 0; k <= j; ++k) {
          const Complex l = unit_lower(j, k);
          if (l == Complex{}) continue;
          ++mono[k];
          rows(r, index.at(mono)) += coef * l;
          --mono[k];
        }
      }
    }
    prev = std::move(rows);
    prev_basis = std::move(basis);
  }
  return prev;
}

double section_norm_closed_form(const RVector& mu, const MultiIndex& index) {
  const int n = index.n();
  if (mu.size() != n + 1) {
    throw InvalidInputError("mu-vector length does not match the multi-index");
  }
  if (index.degree() < 1) throw InvalidInputError("section degree must be >= 1");
  double log_norm = index.log_factorial() - std::lgamma(index.degree() + n + 1.0);
  for (int j = 0; j <= n; ++j) log_norm -= (index[j] + 1.0) * std::log(mu(j));
  return std::exp(log_norm);
}

double section_norm_closed_form(const PosDefHermitian& p,
                                const MultiIndex& index) {
  return section_norm_closed_form(mu_vector(p), index);
}

GramMatrix gram_exact(const PosDefHermitian& p, int m) {
  const int n = p.order() - 1;
  require_basis_size(n, m);
  const LdlFactor f = ldl_unitriangular(p);
  GramMatrix g{n, m, lattice_points(n, m), {}};
  const Matrix t = monomial_transition(f.unit_lower, m);
  const std::size_t size = g.basis.size();

  CVector norms(size);
  for (std::size_t i = 0; i < size; ++i) {
    norms(i) = section_norm_closed_form(f.d, g.basis[i]);
  }
  // <t^I, t^J> = T G T^* = diag(norms)  =>  G = T^{-1} diag(norms) T^{-*}.
  const Matrix t_inv = t.triangularView<Eigen::UnitUpper>().solve(
      Matrix::Identity(size, size));
  g.entries = hermitian_part(t_inv * norms.asDiagonal() * t_inv.adjoint());
  return g;
}

GramEstimate gram_numeric(const PosDefHermitian& p, int m,
                          const ChartScheme& scheme) {
  const int n = p.order() - 1;
  if (n > 2) throw InvalidInputError("gram_numeric supports n <= 2");
  require_basis_size(n, m);
  GramEstimate out;
  out.gram = GramMatrix{n, m, lattice_points(n, m), {}};
  const auto& basis = out.gram.basis;
  const std::size_t size = basis.size();
  const double half_power = 0.5 * (m + n + 1);
  const double norm = std::pow(std::numbers::pi, -n);
  const PosDefHermitian& pp = p;

  auto integrand = [&](const ChartNode& node, std::span<Complex> acc) {
    const double log_q = std::log(fs_quadratic(pp, node.z));
    std::vector<Complex> v(size);
    for (std::size_t i = 0; i < size; ++i) {
      double log_mag = -half_power * log_q;
      double phase = 0.0;
      for (int k = 0; k < n; ++k) {
        const int e = basis[i][k];
        if (e == 0) continue;
        log_mag += e * std::log(node.radius[k]);
        phase += e * node.angle[k];
      }
      v[i] = std::polar(std::exp(log_mag), phase);
    }
    const double w = node.weight * norm;
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        acc[i * size + j] += w * v[i] * std::conj(v[j]);
      }
    }
  };

  const ChartIntegral integral =
      integrate_chart_estimated(n, scheme, size * size, integrand);
  out.gram.entries.resize(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      out.gram.entries(i, j) = integral.value[i * size + j];
    }
  }
  out.gram.entries = hermitian_part(out.gram.entries);
  out.error_estimate = integral.error_estimate;
  return out;
}

RVector chebyshev_norms(const GramMatrix& g) {
  return ldl_unitriangular(g.entries).d;
}

std::vector<ChebyshevSection> chebyshev_sections(const GramMatrix& g) {
  const LdlFactor f = ldl_unitriangular(g.entries);
  const std::size_t size = g.basis.size();
  // G = L^* D L; the rows of T = L^{-*} satisfy T G T^* = D.
  const Matrix upper = f.unit_lower.adjoint();
  const Matrix t = upper.triangularView<Eigen::UnitUpper>().solve(
      Matrix::Identity(size, size));
  std::vector<ChebyshevSection> out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    CVector coeffs = t.row(i).transpose();
    coeffs.head(i).setZero();
    coeffs(i) = 1.0;
    out.push_back({g.basis[i], std::move(coeffs), f.d(i)});
  }
  return out;
}

ChebyshevSection chebyshev_section_coeffs(const GramMatrix& g,
                                          const MultiIndex& index) {
  const int pos = g.position(index);
  return std::move(chebyshev_sections(g)[pos]);
}

Complex gram_inner(const GramMatrix& g, const CVector& s, const CVector& t) {
  return (s.transpose() * g.entries * t.conjugate())(0, 0);
}

double log_multivariate_beta(std::span<const double> x) {
  double sum = 0.0;
  double acc = 0.0;
  for (double v : x) {
    if (!(v > 0.0)) throw InvalidInputError("beta arguments must be positive");
    acc += std::lgamma(v);
    sum += v;
  }
  return acc - std::lgamma(sum);
}

}  // namespace chebfs
