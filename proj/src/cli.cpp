#include "chebfs/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "chebfs/bergman.hpp"
#include "chebfs/chebyshev_potential.hpp"
#include "chebfs/errors.hpp"
#include "chebfs/fs_potentials.hpp"
#include "chebfs/hilb_gram.hpp"
#include "chebfs/mabuchi_energy.hpp"
#include "chebfs/okounkov_simplex.hpp"

namespace chebfs {

namespace {

double parse_real(std::string_view token) {
  while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
  while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size() || !std::isfinite(value)) {
    throw InvalidInputError("not a finite number: '" + std::string(token) + "'");
  }
  return value;
}

std::vector<int> parse_ints(const std::string& spec) {
  std::vector<int> out;
  for (double v : parse_reals(spec)) {
    if (v != std::floor(v)) throw InvalidInputError("not an integer: " + spec);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError("invalid JSON in " + path + ": " + e.what());
  }
}

SimplexPoint parse_alpha(const std::string& spec) {
  return SimplexPoint{parse_reals(spec)};
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json energy_report_json(const PosDefHermitian& p0, const PosDefHermitian& p1,
                        bool chart, const ChartScheme& scheme) {
  Json j{{"okounkov_value", energy_okounkov(p0, p1)}};
  if (chart) {
    const EnergyReport report = energy_report(p0, p1, scheme);
    j["chart_value"] = report.chart_value;
    j["sign"] = report.sign;
    j["gap"] = report.gap;
    j["quadrature_error_estimate"] = report.quadrature_error_estimate;
  }
  return j;
}

// Fixed-width formatting for CSV so equal runs give equal bytes.
std::string csv_number(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

std::vector<double> parse_reals(const std::string& spec) {
  std::vector<double> out;
  std::string_view rest = spec;
  if (rest.empty()) throw InvalidInputError("empty number list");
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_real(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<double> parse_times(const std::string& spec) {
  if (spec.find(':') == std::string::npos) return parse_reals(spec);
  std::vector<std::string_view> parts;
  std::string_view rest = spec;
  while (true) {
    const auto colon = rest.find(':');
    parts.push_back(rest.substr(0, colon));
    if (colon == std::string_view::npos) break;
    rest.remove_prefix(colon + 1);
  }
  if (parts.size() != 3) throw InvalidInputError("time range must be a:b:k");
  const double a = parse_real(parts[0]);
  const double b = parse_real(parts[1]);
  const double k = parse_real(parts[2]);
  if (k < 2 || k != std::floor(k) || !(b > a)) {
    throw InvalidInputError("time range needs a < b and integer k >= 2");
  }
  const int count = static_cast<int>(k);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = a + (b - a) * i / (count - 1);
  return out;
}

PosDefHermitian resolve_matrix(const std::string& spec) {
  if (spec.rfind("identity", 0) == 0 && spec.size() > 8) {
    const double order = parse_real(std::string_view(spec).substr(8));
    if (order < 1 || order != std::floor(order)) {
      throw InvalidInputError("bad identity order: " + spec);
    }
    return PosDefHermitian::identity(static_cast<int>(order));
  }
  if (spec.rfind("diag:", 0) == 0) {
    const std::vector<double> d = parse_reals(spec.substr(5));
    return PosDefHermitian::diagonal(d);
  }
  if (spec.rfind("cosh:", 0) == 0) {
    return path_eval(counterexample_path(), parse_real(std::string_view(spec).substr(5)));
  }
  return PosDefHermitian(matrix_from_json(read_json_file(spec)));
}

FSGeodesicPath resolve_path(const std::string& spec) {
  if (spec == "counterexample") return counterexample_path();
  return path_from_json(read_json_file(spec));
}

Json counterexample_report() {
  const FSGeodesicPath path = counterexample_path();
  Json report;
  report["path"] = path_to_json(path);

  const double c1 = std::cosh(1.0);
  const double s1 = std::sinh(1.0);
  Matrix expected_p1(2, 2);
  expected_p1 << c1, s1, s1, c1;
  const Matrix p0 = path_eval(path, 0.0).matrix();
  const Matrix p1 = path_eval(path, 1.0).matrix();
  report["endpoints"] = {
      {"residual_t0", norm_inf(p0 - Matrix::Identity(2, 2))},
      {"residual_t1", norm_inf(p1 - expected_p1)},
  };

  // The geodesic rebuilt from its endpoints must reproduce the path.
  const FSGeodesicPath rebuilt =
      geodesic_from_endpoints(path_eval(path, 0.0), path_eval(path, 1.0));
  double rebuild_residual = 0.0;
  for (double t : {0.5, 2.0}) {
    rebuild_residual = std::max(
        rebuild_residual,
        norm_inf(path_eval(rebuilt, t).matrix() - path_eval(path, t).matrix()));
  }
  report["geodesic_rebuild_residual"] = rebuild_residual;

  Json mu_rows = Json::array();
  for (double t : {0.0, 0.5, 1.0, 2.0}) {
    const RVector mu = mu_vector(path_eval(path, t));
    mu_rows.push_back({{"t", t},
                       {"mu", vector_to_json(mu)},
                       {"mu0_times_cosh", mu(0) * std::cosh(t)},
                       {"mu1_over_cosh", mu(1) / std::cosh(t)}});
  }
  report["mu"] = std::move(mu_rows);
  report["mu0_at_1"] = mu_vector(path_eval(path, 1.0))(0);

  const std::vector<double> curve_ts = parse_times("0:2:9");
  Json curve = Json::array();
  for (double t : curve_ts) {
    const ChebyshevPotentialFS pot = ChebyshevPotentialFS::of(path_eval(path, t));
    Json values = Json::object();
    for (double a : {0.25, 0.5, 0.75}) {
      values[csv_number(a)] = cheb_closed_form(pot, SimplexPoint{{a}});
    }
    curve.push_back({{"t", t}, {"c", std::move(values)}});
  }
  report["chebyshev_curve"] = std::move(curve);

  const std::vector<double> affine_ts{0.0, 1.0, 2.0};
  const AffineVerdict verdict =
      affine_in_t_test(path, {SimplexPoint{{0.25}}}, affine_ts, 1e-6);
  report["chebyshev_affine"] = {
      {"alpha", 0.25},
      {"ts", affine_ts},
      {"affine", verdict.affine},
      {"defect", verdict.defects.front()},
      {"expected_defect", 0.5 * (std::log(std::cosh(2.0)) - 2 * std::log(c1))},
  };

  const AffineDecomposition decomposition =
      affine_mu_decompose(path, {0.0, 0.5, 1.0, 1.5, 2.0}, 1e-6);
  report["mu_decomposition"] = {{"accepted", decomposition.accepted},
                                {"defects", decomposition.defects}};

  const double energy_defect = energy_affine_along_geodesic(path, curve_ts);
  report["energy_linearity"] = {
      {"ts", curve_ts},
      {"defect", energy_defect},
      {"affine", energy_defect <= 1e-12},
  };
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chebyshev potentials of Fubini-Study metrics on projective space"};
  app.require_subcommand(1, 1);

  std::string p_spec, p0_spec, p1_spec, path_spec = "counterexample";
  std::string ts_spec = "0,0.5,1", alpha_spec, z_spec, d_spec, ms_spec = "4,8,16";
  std::vector<std::string> alpha_specs;
  std::string format = "json";
  int n = 1, m = 1;
  std::optional<int> m_opt;
  double t = 0.0, tol = 1e-6;
  bool numeric = false, curve = false, chart = false;
  ChartScheme scheme;
  ChartGrid grid;

  auto add_scheme = [&](CLI::App* sub) {
    sub->add_option("--radial", scheme.radial_nodes, "Radial quadrature nodes");
    sub->add_option("--angular", scheme.angular_nodes, "Angular quadrature nodes");
    sub->add_option("--quad-tol", scheme.tolerance, "Quadrature error tolerance");
  };

  auto* mu_cmd = app.add_subcommand("mu", "mu-vector and trailing minors of P");
  mu_cmd->add_option("--p", p_spec, "Matrix: identityN, diag:a,b,..., cosh:t or a JSON file")->required();

  auto* ok_cmd = app.add_subcommand("okounkov", "Lex-ordered lattice points of m * simplex");
  ok_cmd->add_option("--n", n, "Dimension")->required()->check(CLI::Range(1, 64));
  ok_cmd->add_option("--m", m, "Degree")->required()->check(CLI::Range(0, 1 << 20));

  auto* geo_cmd = app.add_subcommand("geodesic", "Geodesic between two endpoints");
  geo_cmd->add_option("--p0", p0_spec, "Start matrix")->required();
  geo_cmd->add_option("--p1", p1_spec, "End matrix")->required();
  geo_cmd->add_option("--ts", ts_spec, "Times: a,b,... or start:stop:count");

  auto* gram_cmd = app.add_subcommand("gram", "Gram matrix and Chebyshev norms");
  gram_cmd->add_option("--p", p_spec, "Matrix: identityN, diag:a,b,..., cosh:t or a JSON file")->required();
  gram_cmd->add_option("--m", m, "Degree")->required()->check(CLI::Range(0, 1 << 20));
  gram_cmd->add_flag("--numeric", numeric, "Use chart quadrature");
  add_scheme(gram_cmd);

  auto* cheb_cmd = app.add_subcommand("cheb", "Chebyshev potential values or curves");
  cheb_cmd->add_option("--p", p_spec, "Matrix: identityN, diag:a,b,..., cosh:t or a JSON file");
  cheb_cmd->add_option("--alpha", alpha_spec, "Point of the simplex")->required();
  cheb_cmd->add_option("--m", m_opt, "Finite level")->check(CLI::Range(1, 1 << 20));
  cheb_cmd->add_flag("--curve", curve, "Emit c(alpha, t) along a path");
  cheb_cmd->add_option("--path", path_spec, "Geodesic: counterexample or a JSON file");
  cheb_cmd->add_option("--ts", ts_spec, "Times: a,b,... or start:stop:count");
  cheb_cmd->add_option("--format", format, "Curve output format")->check(CLI::IsMember({"json", "csv"}));

  auto* aff_cmd = app.add_subcommand("affine-test", "Affineness of c(alpha, t) and log mu");
  aff_cmd->add_option("--path", path_spec, "Geodesic: counterexample or a JSON file");
  aff_cmd->add_option("--alpha", alpha_specs, "Points of the simplex (repeatable)")
      ->required();
  aff_cmd->add_option("--ts", ts_spec, "Sample times");
  aff_cmd->add_option("--tol", tol, "Affineness tolerance");

  auto* berg_cmd = app.add_subcommand("bergman", "Bergman geodesic value");
  berg_cmd->add_option("--p0", p0_spec, "Start matrix")->required();
  berg_cmd->add_option("--p1", p1_spec, "End matrix")->required();
  berg_cmd->add_option("--m", m, "Level")->required()->check(CLI::Range(1, 1 << 20));
  berg_cmd->add_option("--t", t, "Time");
  berg_cmd->add_option("--z", z_spec, "Chart point re,im[,re,im...]")->required();

  auto* bd_cmd = app.add_subcommand("bergman-defect", "Bergman exactness for P1 = e^D");
  bd_cmd->add_option("--d", d_spec, "Diagonal D")->required();
  bd_cmd->add_option("--ms", ms_spec, "Levels");
  bd_cmd->add_option("--t-count", grid.t_count, "Time grid size")->check(CLI::Range(1, 10000));
  bd_cmd->add_option("--z-count", grid.z_count, "Chart grid size per axis")->check(CLI::Range(1, 10000));
  bd_cmd->add_option("--radius", grid.radius, "Chart grid radius");

  auto* en_cmd = app.add_subcommand("energy", "Aubin-Mabuchi energy");
  en_cmd->add_option("--p0", p0_spec, "Start matrix")->required();
  en_cmd->add_option("--p1", p1_spec, "End matrix")->required();
  en_cmd->add_flag("--chart", chart, "Also integrate on the chart");
  add_scheme(en_cmd);

  auto* ce_cmd = app.add_subcommand("counterexample", "Full counterexample report");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mu_cmd->parsed()) {
      const PosDefHermitian p = resolve_matrix(p_spec);
      Json minors = Json::array();
      for (int i = 0; i <= p.order(); ++i) minors.push_back(trailing_minor_det(p, i));
      emit(out, {{"order", p.order()},
                 {"mu", vector_to_json(mu_vector(p))},
                 {"trailing_minors", std::move(minors)}});
    } else if (ok_cmd->parsed()) {
      const auto points = lattice_points(n, m);
      emit(out, {{"n", n}, {"m", m}, {"count", points.size()},
                 {"points", lattice_to_json(points)}});
    } else if (geo_cmd->parsed()) {
      const FSGeodesicPath path =
          geodesic_from_endpoints(resolve_matrix(p0_spec), resolve_matrix(p1_spec));
      Json samples = Json::array();
      for (double s : parse_times(ts_spec)) {
        samples.push_back({{"t", s}, {"P", matrix_to_json(path_eval(path, s).matrix())}});
      }
      emit(out, {{"path", path_to_json(path)}, {"samples", std::move(samples)}});
    } else if (gram_cmd->parsed()) {
      const PosDefHermitian p = resolve_matrix(p_spec);
      Json j;
      GramMatrix g;
      if (numeric) {
        GramEstimate est = gram_numeric(p, m, scheme);
        j["error_estimate"] = est.error_estimate;
        g = std::move(est.gram);
      } else {
        g = gram_exact(p, m);
      }
      Json closed = Json::array();
      for (const auto& idx : g.basis) closed.push_back(section_norm_closed_form(p, idx));
      Json result{{"n", g.n},
                  {"m", g.m},
                  {"basis", lattice_to_json(g.basis)},
                  {"gram", matrix_to_json(g.entries)},
                  {"chebyshev_norms", vector_to_json(chebyshev_norms(g))},
                  {"closed_form_norms", std::move(closed)}};
      if (j.contains("error_estimate")) result["error_estimate"] = j["error_estimate"];
      emit(out, result);
    } else if (cheb_cmd->parsed()) {
      const SimplexPoint alpha = parse_alpha(alpha_spec);
      if (curve) {
        const FSGeodesicPath path = resolve_path(path_spec);
        const std::vector<double> ts = parse_times(ts_spec);
        std::vector<double> values;
        for (double s : ts) {
          values.push_back(
              cheb_closed_form(ChebyshevPotentialFS::of(path_eval(path, s)), alpha));
        }
        if (format == "csv") {
          out << "t,value\n";
          for (std::size_t k = 0; k < ts.size(); ++k) {
            out << csv_number(ts[k]) << ',' << csv_number(values[k]) << '\n';
          }
        } else {
          Json rows = Json::array();
          for (std::size_t k = 0; k < ts.size(); ++k) {
            rows.push_back({{"t", ts[k]}, {"value", values[k]}});
          }
          emit(out, {{"alpha", alpha.alpha}, {"curve", std::move(rows)}});
        }
      } else {
        if (p_spec.empty()) throw InvalidInputError("cheb needs --p unless --curve is given");
        const PosDefHermitian p = resolve_matrix(p_spec);
        const double value = cheb_closed_form(ChebyshevPotentialFS::of(p), alpha);
        if (format == "csv") {
          out << "alpha0,value\n" << csv_number(alpha.alpha.front()) << ','
              << csv_number(value) << '\n';
        } else {
          Json j{{"alpha", alpha.alpha}, {"value", value}};
          if (m_opt) {
            j["m"] = *m_opt;
            j["lattice_point"] = round_to_lattice(alpha, *m_opt).exponents();
            j["finite_m_value"] = cheb_finite_m(p, *m_opt, alpha);
          }
          emit(out, j);
        }
      }
    } else if (aff_cmd->parsed()) {
      const FSGeodesicPath path = resolve_path(path_spec);
      const std::vector<double> ts = parse_times(ts_spec);
      std::vector<SimplexPoint> alphas;
      for (const auto& a : alpha_specs) alphas.push_back(parse_alpha(a));
      const AffineVerdict verdict = affine_in_t_test(path, alphas, ts, tol);
      std::vector<double> decomposition_ts = ts;
      decomposition_ts.push_back(0.0);
      decomposition_ts.push_back(1.0);
      std::sort(decomposition_ts.begin(), decomposition_ts.end());
      decomposition_ts.erase(std::unique(decomposition_ts.begin(), decomposition_ts.end()),
                             decomposition_ts.end());
      const AffineDecomposition dec = affine_mu_decompose(path, decomposition_ts, tol);
      Json dec_json{{"accepted", dec.accepted}, {"defects", dec.defects}};
      if (dec.decomposition) {
        dec_json["L"] = matrix_to_json(dec.decomposition->l);
        dec_json["K"] = vector_to_json(dec.decomposition->k);
      }
      emit(out, {{"chebyshev", {{"affine", verdict.affine}, {"defects", verdict.defects}}},
                 {"mu_decomposition", std::move(dec_json)},
                 {"energy_defect", energy_affine_along_geodesic(path, ts)}});
    } else if (berg_cmd->parsed()) {
      const std::vector<double> coords = parse_reals(z_spec);
      if (coords.size() % 2 != 0) throw InvalidInputError("--z needs re,im pairs");
      ChartPoint z;
      for (std::size_t k = 0; k < coords.size(); k += 2) {
        z.z.emplace_back(coords[k], coords[k + 1]);
      }
      const BergmanSpectrum spec =
          bergman_spectrum(resolve_matrix(p0_spec), resolve_matrix(p1_spec), m);
      emit(out, {{"m", m},
                 {"t", t},
                 {"value", bergman_geodesic_eval(spec, t, z)},
                 {"lambdas", vector_to_json(spec.lambdas)}});
    } else if (bd_cmd->parsed()) {
      const std::vector<double> d_values = parse_reals(d_spec);
      const RVector d = Eigen::Map<const RVector>(d_values.data(), d_values.size());
      Json rows = Json::array();
      for (int level : parse_ints(ms_spec)) {
        const BergmanExactness ex = bergman_exactness(d, level, grid);
        rows.push_back({{"m", level},
                        {"max_defect", ex.max_defect},
                        {"mean_offset", ex.mean_offset},
                        {"expected_offset", ex.expected_offset}});
      }
      emit(out, {{"D", d_values}, {"rows", std::move(rows)}});
    } else if (en_cmd->parsed()) {
      emit(out, energy_report_json(resolve_matrix(p0_spec), resolve_matrix(p1_spec),
                                   chart, scheme));
    } else if (ce_cmd->parsed()) {
      emit(out, counterexample_report());
    }
  } catch (const Error& e) {
    err << Json{{"error", e.kind()}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace chebfs
