#include "chebfs/json_io.hpp"

#include "chebfs/errors.hpp"

namespace chebfs {

Json matrix_to_json(const Matrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return Json{{"order", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j) {
  try {
    const int order = j.at("order").get<int>();
    if (order < 1) throw InvalidInputError("matrix order must be positive");
    const Json& re = j.at("re");
    const bool has_im = j.contains("im");
    if (re.size() != static_cast<std::size_t>(order) ||
        (has_im && j.at("im").size() != static_cast<std::size_t>(order))) {
      throw InvalidInputError("matrix rows do not match the declared order");
    }
    Matrix m(order, order);
    for (int r = 0; r < order; ++r) {
      if (re[r].size() != static_cast<std::size_t>(order) ||
          (has_im && j["im"][r].size() != static_cast<std::size_t>(order))) {
        throw InvalidInputError("matrix columns do not match the declared order");
      }
      for (int c = 0; c < order; ++c) {
        m(r, c) = Complex(re[r][c].get<double>(),
                          has_im ? j["im"][r][c].get<double>() : 0.0);
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed matrix JSON: ") + e.what());
  }
}

Json path_to_json(const FSGeodesicPath& path) {
  return Json{{"A", matrix_to_json(path.a())}, {"D", vector_to_json(path.d())}};
}

FSGeodesicPath path_from_json(const Json& j) {
  try {
    Matrix a = matrix_from_json(j.at("A"));
    const auto d_values = j.at("D").get<std::vector<double>>();
    RVector d = Eigen::Map<const RVector>(d_values.data(), d_values.size());
    return FSGeodesicPath(std::move(a), std::move(d));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed path JSON: ") + e.what());
  }
}

Json lattice_to_json(const std::vector<MultiIndex>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back(p.exponents());
  return out;
}

Json vector_to_json(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace chebfs
