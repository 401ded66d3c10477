#include "chebfs/linalg_hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "chebfs/errors.hpp"

namespace chebfs {

namespace {

double max_abs_entry(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Trailing elimination without validation of the input. Returns the index of
// the first failing pivot (counting down from the last row), or -1.
int eliminate_from_bottom(const Matrix& p, LdlFactor& out) {
  const Eigen::Index n = p.rows();
  out.unit_lower = Matrix::Identity(n, n);
  out.d = RVector::Zero(n);
  Matrix& l = out.unit_lower;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    double pivot = p(k, k).real();
    for (Eigen::Index j = k + 1; j < n; ++j) {
      pivot -= std::norm(l(j, k)) * out.d(j);
    }
    const double diag = p(k, k).real();
    if (!(diag > 0.0) || !(pivot > kPivotTolerance * diag)) {
      return static_cast<int>(k);
    }
    out.d(k) = pivot;
    for (Eigen::Index i = 0; i < k; ++i) {
      Complex acc = p(k, i);
      for (Eigen::Index j = k + 1; j < n; ++j) {
        acc -= std::conj(l(j, k)) * out.d(j) * l(j, i);
      }
      l(k, i) = acc / pivot;
    }
  }
  return -1;
}

void require_square(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvalidInputError("matrix must be square and non-empty");
  }
}

}  // namespace

Matrix hermitian_part(const Matrix& m) {
  return (m + m.adjoint()) * 0.5;
}

double norm_inf(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

void require_hermitian(const Matrix& m) {
  require_square(m);
  const double tol = kHermitianTolerance * std::max(1.0, max_abs_entry(m));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      const Complex gap = m(i, j) - std::conj(m(j, i));
      if (std::abs(gap.real()) > tol || std::abs(gap.imag()) > tol) {
        std::ostringstream os;
        os << "matrix is not Hermitian at (" << i << ", " << j << ")";
        throw InvalidInputError(os.str());
      }
    }
  }
}

PosDefHermitian::PosDefHermitian(Matrix entries) : m_(std::move(entries)) {
  require_hermitian(m_);
  if (!m_.allFinite()) throw InvalidInputError("matrix has non-finite entries");
  LdlFactor scratch;
  const int failed = eliminate_from_bottom(m_, scratch);
  if (failed >= 0) {
    std::ostringstream os;
    os << "matrix is not positive definite (pivot " << failed << ")";
    throw DefinitenessError(os.str());
  }
}

PosDefHermitian PosDefHermitian::symmetrized(const Matrix& entries) {
  require_square(entries);
  return PosDefHermitian(hermitian_part(entries));
}

PosDefHermitian PosDefHermitian::identity(int order) {
  return PosDefHermitian(Matrix::Identity(order, order));
}

PosDefHermitian PosDefHermitian::diagonal(std::span<const double> diag) {
  Matrix m = Matrix::Zero(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return PosDefHermitian(std::move(m));
}

double trailing_minor_det(const Matrix& p, int i) {
  require_hermitian(p);
  const int order = static_cast<int>(p.rows());
  if (i < 0 || i > order) throw InvalidInputError("minor index out of range");
  if (i == order) return 1.0;
  const int size = order - i;
  const Matrix block = p.bottomRightCorner(size, size);
  const Complex det = block.partialPivLu().determinant();
  if (std::abs(det.imag()) > 1e-10 * std::max(std::abs(det), 1e-300)) {
    throw InconsistencyError("trailing minor has a non-negligible imaginary part");
  }
  return det.real();
}

double trailing_minor_det(const PosDefHermitian& p, int i) {
  return trailing_minor_det(p.matrix(), i);
}

RVector mu_vector(const Matrix& p) {
  require_hermitian(p);
  const int order = static_cast<int>(p.rows());
  RVector mu(order);
  double below = 1.0;
  for (int i = order - 1; i >= 0; --i) {
    const double det = trailing_minor_det(p, i);
    const double diag = p(i, i).real();
    if (!(det > 0.0) || !(diag > 0.0) || !(det / below > kPivotTolerance * diag)) {
      std::ostringstream os;
      os << "matrix is not positive definite (det_" << i << " <= 0)";
      throw DefinitenessError(os.str());
    }
    mu(i) = det / below;
    below = det;
  }
  return mu;
}

RVector mu_vector(const PosDefHermitian& p) { return mu_vector(p.matrix()); }

LdlFactor ldl_unitriangular(const Matrix& p) {
  require_hermitian(p);
  LdlFactor out;
  const int failed = eliminate_from_bottom(p, out);
  if (failed >= 0) {
    std::ostringstream os;
    os << "elimination broke down at pivot " << failed;
    throw DefinitenessError(os.str());
  }
  return out;
}

LdlFactor ldl_unitriangular(const PosDefHermitian& p) {
  LdlFactor out;
  eliminate_from_bottom(p.matrix(), out);
  return out;
}

Matrix trailing_cholesky(const PosDefHermitian& p) {
  const LdlFactor f = ldl_unitriangular(p);
  return f.d.cwiseSqrt().cast<Complex>().asDiagonal() * f.unit_lower;
}

double hadamard_ratio(const Matrix& a) {
  require_square(a);
  double scale = 1.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double row = a.row(i).norm();
    if (row == 0.0) return 0.0;
    scale *= row;
  }
  return std::abs(a.partialPivLu().determinant()) / scale;
}

PosDefHermitian congruence(const PosDefHermitian& p, const Matrix& a) {
  if (a.rows() != p.order() || a.cols() != p.order()) {
    throw InvalidInputError("congruence: size mismatch");
  }
  if (!(hadamard_ratio(a) > kPivotTolerance)) {
    throw InvalidInputError("congruence: matrix is singular");
  }
  return PosDefHermitian::symmetrized(a.adjoint() * p.matrix() * a);
}

FSGeodesicPath::FSGeodesicPath(Matrix a, RVector d)
    : a_(std::move(a)), d_(std::move(d)) {
  require_square(a_);
  if (d_.size() != a_.rows()) {
    throw InvalidInputError("path: D length must equal the order of A");
  }
  if (!a_.allFinite() || !d_.allFinite()) {
    throw InvalidInputError("path: non-finite entries");
  }
  if (!(hadamard_ratio(a_) > kPivotTolerance)) {
    throw InvalidInputError("path: A is singular");
  }
}

PosDefHermitian path_eval(const FSGeodesicPath& path, double t) {
  const CVector scale = (path.d() * t).array().exp().cast<Complex>();
  return PosDefHermitian::symmetrized(path.a().adjoint() * scale.asDiagonal() *
                                      path.a());
}

FSGeodesicPath simultaneous_diagonalize(const PosDefHermitian& p0,
                                        const PosDefHermitian& p1) {
  if (p0.order() != p1.order()) {
    throw InvalidInputError("simultaneous_diagonalize: order mismatch");
  }
  const int n = p0.order();
  const Matrix c = trailing_cholesky(p0);
  const Matrix c_inv =
      c.triangularView<Eigen::Lower>().solve(Matrix::Identity(n, n));
  const Matrix whitened = hermitian_part(c_inv.adjoint() * p1.matrix() * c_inv);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(whitened);
  if (eig.info() != Eigen::Success) {
    throw InconsistencyError("Hermitian eigensolver did not converge");
  }
  const RVector& values = eig.eigenvalues();
  Matrix vectors = eig.eigenvectors();
  if (!(values.minCoeff() > 0.0)) {
    throw DefinitenessError("pencil has a non-positive eigenvalue");
  }

  // Phase: first non-negligible coordinate made real positive.
  std::vector<int> lead(n);
  for (int j = 0; j < n; ++j) {
    auto col = vectors.col(j);
    const double cut = 1e-12 * col.norm();
    int k = 0;
    while (k < n - 1 && std::abs(col(k)) <= cut) ++k;
    lead[j] = k;
    col *= std::conj(col(k)) / std::abs(col(k));
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values(a) > values(b); });
  const double tie = 1e-12 * values.cwiseAbs().maxCoeff();
  for (int start = 0; start < n;) {
    int stop = start + 1;
    while (stop < n && values(order[start]) - values(order[stop]) <= tie) ++stop;
    std::stable_sort(order.begin() + start, order.begin() + stop,
                     [&](int a, int b) { return lead[a] < lead[b]; });
    start = stop;
  }

  Matrix u(n, n);
  RVector d(n);
  for (int j = 0; j < n; ++j) {
    u.col(j) = vectors.col(order[j]);
    d(j) = std::log(values(order[j]));
  }
  return FSGeodesicPath(u.adjoint() * c, d);
}

double second_divided_difference(double t0, double f0, double t1, double f1,
                                 double t2, double f2) {
  return 2.0 * (f0 / ((t0 - t1) * (t0 - t2)) + f1 / ((t1 - t0) * (t1 - t2)) +
                f2 / ((t2 - t0) * (t2 - t1)));
}

AffineDecomposition affine_mu_decompose(const FSGeodesicPath& path,
                                        std::vector<double> sample_ts,
                                        double tol) {
  if (!(tol > 0.0)) throw InvalidInputError("tolerance must be positive");
  std::sort(sample_ts.begin(), sample_ts.end());
  if (std::adjacent_find(sample_ts.begin(), sample_ts.end()) != sample_ts.end()) {
    throw InvalidInputError("sample times must be distinct");
  }
  if (sample_ts.size() < 3) {
    throw InvalidInputError("at least three sample times are required");
  }
  const auto has = [&](double v) {
    return std::binary_search(sample_ts.begin(), sample_ts.end(), v);
  };
  if (!has(0.0) || !has(1.0)) {
    throw InvalidInputError("sample times must contain 0 and 1");
  }

  const int n = path.order();
  std::vector<PosDefHermitian> samples;
  std::vector<RVector> log_mu;
  samples.reserve(sample_ts.size());
  for (double t : sample_ts) {
    samples.push_back(path_eval(path, t));
    log_mu.push_back(mu_vector(samples.back()).array().log().matrix());
  }

  AffineDecomposition out;
  out.defects.assign(n, 0.0);
  for (std::size_t s = 1; s + 1 < sample_ts.size(); ++s) {
    for (int i = 0; i < n; ++i) {
      const double dd = second_divided_difference(
          sample_ts[s - 1], log_mu[s - 1](i), sample_ts[s], log_mu[s](i),
          sample_ts[s + 1], log_mu[s + 1](i));
      out.defects[i] = std::max(out.defects[i], std::abs(dd));
    }
  }
  out.accepted = std::all_of(out.defects.begin(), out.defects.end(),
                             [&](double v) { return v <= tol; });
  if (!out.accepted) return out;

  const auto index_of = [&](double v) {
    return std::lower_bound(sample_ts.begin(), sample_ts.end(), v) -
           sample_ts.begin();
  };
  const auto at0 = index_of(0.0);
  const auto at1 = index_of(1.0);
  TriangularDecomposition dec{trailing_cholesky(samples[at0]),
                              log_mu[at1] - log_mu[at0]};
  for (std::size_t s = 0; s < sample_ts.size(); ++s) {
    const CVector scale =
        (dec.k * sample_ts[s]).array().exp().cast<Complex>();
    const Matrix rebuilt = dec.l.adjoint() * scale.asDiagonal() * dec.l;
    const Matrix& p = samples[s].matrix();
    if (norm_inf(rebuilt - p) > tol * norm_inf(p)) {
      std::ostringstream os;
      os << "log mu is affine but L^* e^{tK} L does not reproduce P(t) at t = "
         << sample_ts[s];
      throw InconsistencyError(os.str());
    }
  }
  out.decomposition = std::move(dec);
  return out;
}

}  // namespace chebfs
