#include "shapecur/experiments.hpp"

#include "shapecur/embed.hpp"
#include "shapecur/io.hpp"
#include "shapecur/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string_view>

namespace shapecur {

// ---------------------------------------------------------------------------
// options

Json ExperimentOptions::to_json() const {
  Json j = Json::object();
  if (mesh) j["mesh"] = *mesh;
  if (degree) j["degree"] = *degree;
  if (monomial) j["monomial"] = *monomial;
  if (sigma) j["sigma"] = *sigma;
  if (s) j["s"] = *s;
  if (rule) j["rule"] = rule_name(*rule);
  if (points) j["points"] = *points;
  if (seed) j["seed"] = *seed;
  return j;
}

ExperimentOptions ExperimentOptions::from_json(const Json& j) {
  ExperimentOptions o;
  try {
    if (j.contains("mesh")) o.mesh = j.at("mesh").get<int>();
    if (j.contains("degree")) o.degree = j.at("degree").get<int>();
    if (j.contains("monomial")) o.monomial = j.at("monomial").get<int>();
    if (j.contains("sigma")) o.sigma = j.at("sigma").get<double>();
    if (j.contains("s")) o.s = j.at("s").get<int>();
    if (j.contains("rule")) o.rule = parse_rule(j.at("rule").get<std::string>());
    if (j.contains("points")) o.points = j.at("points").get<std::size_t>();
    if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("invalid experiment options: ") + e.what());
  }
  return o;
}

// ---------------------------------------------------------------------------
// helpers

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigurationError("slope fit needs at least two points");
  double mx = 0.0, my = 0.0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

void dump_rounded_into(const Json& j, int digits, int indent, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
      out += "null";
      return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    out += buf;
    if (std::string_view(buf).find_first_of(".en") == std::string_view::npos) out += ".0";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      dump_rounded_into(it.value(), digits, indent, depth + 1, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array() && !j.empty()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      dump_rounded_into(j[i], digits, indent, depth + 1, out);
    }
    out += "\n" + close + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump_rounded(const Json& j, int digits, int indent) {
  std::string out;
  dump_rounded_into(j, digits, indent, 0, out);
  return out;
}

namespace {

struct Settings {
  std::string preset;
  ExperimentOptions opts;
  Json config;

  Settings(std::string name, const ExperimentOptions& o) : preset(std::move(name)), opts(o) {
    config["preset"] = preset;
  }
  template <class T>
  T get(const std::optional<T>& v, T fallback, const char* key) {
    const T r = v ? *v : fallback;
    config[key] = r;
    return r;
  }
  int mesh(int d) { return get(opts.mesh, d, "mesh"); }
  int degree(int d) { return get(opts.degree, d, "degree"); }
  int monomial(int d) { return get(opts.monomial, d, "monomial"); }
  double sigma() { return get(opts.sigma, kDefaultSigma, "sigma"); }
  int order(int d) { return get(opts.s, d, "s"); }
  std::size_t points(std::size_t d) { return get(opts.points, d, "points"); }
  std::uint64_t seed(std::uint64_t d) { return get(opts.seed, d, "seed"); }
  QuadratureRule rule(QuadratureRule d) {
    const QuadratureRule r = opts.rule ? *opts.rule : d;
    config["rule"] = rule_name(r);
    return r;
  }
};

std::string embedding_csv(const std::vector<std::string>& labels, const std::vector<int>& classes,
                          const Matrix& coords) {
  std::string s = "label,class,x,y\n";
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    s += labels[k] + "," + std::to_string(classes.empty() ? 0 : classes[k]) + "," + format_double(coords(i, 0)) +
         "," + format_double(coords.cols() > 1 ? coords(i, 1) : 0.0) + "\n";
  }
  return s;
}

double relative_error(const CurrentVector& f, const CurrentVector& ref, const GramOperator& G, int s) {
  return distance(f, ref, G, s) / dual_norm(ref, G, s);
}

double max_radius(const FourierCoeffs& c) {
  double r = 0.0;
  for (int i = 0; i < 512; ++i) r = std::max(r, std::abs(evaluate_fourier(c, i / 512.0)));
  return r;
}

Matrix whitened_rows(const std::vector<SampledCurve>& curves, const FormSpace& space, const GramOperator& G,
                     int s, QuadratureRule rule) {
  Matrix X(static_cast<Eigen::Index>(curves.size()), static_cast<Eigen::Index>(2 * space.dof_count()));
  for (std::size_t i = 0; i < curves.size(); ++i) {
    X.row(static_cast<Eigen::Index>(i)) = whiten(evaluate_current(curves[i], space, rule), G, s).transpose();
  }
  return X;
}

// ---------------------------------------------------------------------------
// presets

ExperimentResult reparam(Settings& st) {
  const int M = st.mesh(10);
  const int d = st.degree(1);
  const double sigma = st.sigma();
  const std::size_t n = st.points(512);
  const std::uint64_t seed = st.seed(7);
  const double spread = 0.1;
  st.config["spread"] = spread;
  const auto rule = st.rule(QuadratureRule::Midpoint);

  const auto space = FormSpace::lagrange(M, d);
  const auto G = assemble_gram(space, sigma);
  const SampledCurve a = bowtie(n);
  const SampledCurve b = reparameterize(a, spread, seed);
  const auto fa = evaluate_current(a, space, rule);
  const auto fb = evaluate_current(b, space, rule);

  ExperimentResult r;
  Table t{{"s", "norm_uniform", "norm_reparam", "rel_diff"}, {}};
  for (int s = 1; s <= 2; ++s) {
    const double na = dual_norm(fa, G, s);
    const double nb = dual_norm(fb, G, s);
    t.add({static_cast<double>(s), na, nb, std::abs(na - nb) / na});
    r.summary["rel_diff_h" + std::to_string(s)] = std::abs(na - nb) / na;
  }
  const double finf = std::max(fa.fx.cwiseAbs().maxCoeff(), fa.fy.cwiseAbs().maxCoeff());
  const double dinf = std::max((fa.fx - fb.fx).cwiseAbs().maxCoeff(), (fa.fy - fb.fy).cwiseAbs().maxCoeff());
  r.summary["current_rel_diff_inf"] = dinf / finf;
  r.files.push_back({"reparam.csv", "s,norm_uniform,norm_reparam,rel_diff", t.to_csv()});
  r.files.push_back({"bowtie.csv", "t,x,y", curve_to_csv(a)});
  r.files.push_back({"bowtie_reparam.csv", "t,x,y", curve_to_csv(b)});
  return r;
}

ExperimentResult quad_convergence(Settings& st) {
  const int N = st.monomial(10);
  const double sigma = st.sigma();
  const int s = st.order(1);
  const std::uint64_t seed = st.seed(3);
  const std::vector<std::size_t> ns{16, 32, 64, 128, 256, 512};
  const std::size_t nref = 8192;
  st.config["point_counts"] = ns;
  st.config["reference_points"] = nref;

  const auto space = FormSpace::monomial(N);
  const auto G = assemble_gram(space, sigma);
  const auto coeffs = random_full_coeffs(seed);
  const auto ref = evaluate_current(fourier_shape(coeffs, nref), space, QuadratureRule::Simpson);

  ExperimentResult r;
  Table t{{"n", "ds", "err_midpoint", "err_simpson"}, {}};
  std::vector<double> ds, em, es;
  for (std::size_t n : ns) {
    const auto c = fourier_shape(coeffs, n);
    const double h = polyline_length(c) / static_cast<double>(n);
    const double m = relative_error(evaluate_current(c, space, QuadratureRule::Midpoint), ref, G, s);
    const double p = relative_error(evaluate_current(c, space, QuadratureRule::Simpson), ref, G, s);
    t.add({static_cast<double>(n), h, m, p});
    ds.push_back(h);
    em.push_back(m);
    es.push_back(p);
  }
  r.summary["slope_midpoint"] = loglog_slope(ds, em);
  r.summary["slope_simpson"] = loglog_slope(ds, es);
  r.summary["err_midpoint"] = em;
  r.summary["err_simpson"] = es;
  r.files.push_back({"quad_convergence.csv", "n,ds,err_midpoint,err_simpson", t.to_csv()});
  return r;
}

ExperimentResult noise_robustness(Settings& st) {
  const std::size_t n = st.points(101);
  const std::uint64_t seed = st.seed(11);
  const int trials = 400;
  st.config["trials"] = trials;
  const std::vector<double> small{1e-4, 2e-4, 4e-4, 8e-4, 1.6e-3};
  const std::vector<double> large{3.2e-3, 6.4e-3, 1.28e-2, 2.56e-2, 5.12e-2};
  st.config["eps_small"] = small;
  st.config["eps_large"] = large;

  // the y dx entry of the degree-1 monomial space
  const auto space = FormSpace::monomial(2);
  const SampledCurve line = translate(segment_line(n), Vec2(-0.5, 0.0));

  Table t{{"eps", "current_err_std", "current_err_mean", "arclength_bias", "arclength_std"}, {}};
  std::vector<double> eps_all = small;
  eps_all.insert(eps_all.end(), large.begin(), large.end());
  std::vector<double> cur_std, arc_bias;
  for (double eps : eps_all) {
    double s1 = 0.0, s2 = 0.0, a1 = 0.0, a2 = 0.0;
    for (int k = 0; k < trials; ++k) {
      const auto noisy = add_noise(line, eps, seed * 1000003ULL + static_cast<std::uint64_t>(k), true);
      const double e = evaluate_current(noisy, space).fx[2];
      const double a = arclength_functional(noisy) - 1.0;
      s1 += e;
      s2 += e * e;
      a1 += a;
      a2 += a * a;
    }
    const double mean = s1 / trials;
    const double sd = std::sqrt(std::max(s2 / trials - mean * mean, 0.0));
    const double am = a1 / trials;
    const double asd = std::sqrt(std::max(a2 / trials - am * am, 0.0));
    t.add({eps, sd, mean, am, asd});
    if (eps <= small.back()) {
      cur_std.push_back(sd);
      arc_bias.push_back(am);
    }
  }
  ExperimentResult r;
  r.summary["slope_current_std"] = loglog_slope(small, cur_std);
  r.summary["slope_arclength_bias"] = loglog_slope(small, arc_bias);
  r.summary["ds"] = 1.0 / static_cast<double>(n - 1);
  r.files.push_back({"noise_robustness.csv", "eps,current_err_std,current_err_mean,arclength_bias,arclength_std",
                     t.to_csv()});
  return r;
}

ExperimentResult rough_shapes(Settings& st) {
  const int N = st.monomial(10);
  const double sigma = st.sigma();
  const int s = st.order(1);
  const std::uint64_t seed = st.seed(5);
  const auto rule = st.rule(QuadratureRule::Midpoint);
  const std::vector<double> decays{1.5, 2.0, 3.0};
  const std::vector<std::size_t> ns{16, 32, 64, 128, 256, 512, 1024};
  const std::size_t nref = 16384;
  const int kmax = 64;
  const double scale = 0.05;
  st.config["decays"] = decays;
  st.config["max_frequency"] = kmax;
  st.config["amplitude"] = scale;

  const auto space = FormSpace::monomial(N);
  const auto G = assemble_gram(space, sigma);
  Table t{{"n", "err_decay_1.5", "err_decay_2", "err_decay_3"}, {}};
  std::vector<std::vector<double>> err(decays.size());
  for (std::size_t k = 0; k < decays.size(); ++k) {
    const auto coeffs = rough_coeffs(seed, decays[k], kmax, scale);
    const auto ref = evaluate_current(fourier_shape(coeffs, nref), space, rule);
    for (std::size_t n : ns) {
      err[k].push_back(relative_error(evaluate_current(fourier_shape(coeffs, n), space, rule), ref, G, s));
    }
  }
  ExperimentResult r;
  for (std::size_t i = 0; i < ns.size(); ++i) t.add({static_cast<double>(ns[i]), err[0][i], err[1][i], err[2][i]});
  for (std::size_t k = 0; k < decays.size(); ++k) {
    std::size_t first = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (err[k][i] < 0.01) {
        first = ns[i];
        break;
      }
    }
    r.summary["points_for_1pct"].push_back(first);
  }
  r.files.push_back({"rough_shapes.csv", "n,err_decay_1.5,err_decay_2,err_decay_3", t.to_csv()});
  return r;
}

ExperimentResult metric_convergence(Settings& st) {
  const double sigma = st.sigma();
  const std::size_t n = st.points(5000);
  std::vector<int> degrees{1, 2, 3, 4};
  if (st.opts.degree) degrees = {*st.opts.degree};
  st.config["degrees"] = degrees;
  const int mmax = st.mesh(128);
  const std::size_t max_dofs = 300000;

  const SampledCurve c = circle(n);
  Table t{{"degree", "M", "norm_h1", "norm_h2", "diff_h1", "diff_h2"}, {}};
  ExperimentResult r;
  for (int d : degrees) {
    double p1 = 0.0, p2 = 0.0;
    std::vector<double> ms, d1, d2;
    for (int M = 1; M <= mmax; M *= 2) {
      const std::size_t dofs = static_cast<std::size_t>(d * M + 1) * static_cast<std::size_t>(d * M + 1);
      if (dofs > max_dofs) break;
      const auto space = FormSpace::lagrange(M, d);
      const auto G = assemble_gram(space, sigma);
      const auto f = evaluate_current(c, space);
      const double n1 = dual_norm(f, G, 1);
      const double n2 = dual_norm(f, G, 2);
      const double e1 = M == 1 ? 0.0 : std::abs(n1 - p1);
      const double e2 = M == 1 ? 0.0 : std::abs(n2 - p2);
      t.add({static_cast<double>(d), static_cast<double>(M), n1, n2, e1, e2});
      if (M >= 16) {
        ms.push_back(M);
        d1.push_back(e1);
        d2.push_back(e2);
      }
      p1 = n1;
      p2 = n2;
    }
    Json j;
    j["degree"] = d;
    j["slope_h1"] = ms.size() >= 2 ? loglog_slope(ms, d1) : 0.0;
    j["slope_h2"] = ms.size() >= 2 ? loglog_slope(ms, d2) : 0.0;
    r.summary["fits"].push_back(j);
  }
  r.files.push_back({"metric_convergence.csv", "degree,M,norm_h1,norm_h2,diff_h1,diff_h2", t.to_csv()});
  return r;
}

ExperimentResult wiggly_table(Settings& st) {
  const double sigma = st.sigma();
  const std::size_t n = st.points(5000);
  const int mbase = st.mesh(80);
  const std::vector<int> omegas{2, 4, 8, 16, 32, 64};
  const std::vector<double> eps{0.1, 0.05, 0.025};
  const std::vector<int> meshes{mbase, 2 * mbase, 4 * mbase};
  st.config["omegas"] = omegas;
  st.config["eps"] = eps;
  st.config["richardson_order"] = 1;

  // d[k][i][j][s-1]: mesh k, omega i, eps j
  std::vector<std::vector<std::vector<std::array<double, 2>>>> d(
      meshes.size(), std::vector<std::vector<std::array<double, 2>>>(omegas.size(), std::vector<std::array<double, 2>>(eps.size())));
  for (std::size_t k = 0; k < meshes.size(); ++k) {
    const auto space = FormSpace::lagrange(meshes[k], 1);
    const auto G = assemble_gram(space, sigma);
    const auto base = evaluate_current(circle(n), space);
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      for (std::size_t j = 0; j < eps.size(); ++j) {
        const auto f = evaluate_current(wiggly_circle(eps[j], omegas[i], n), space);
        d[k][i][j] = {distance(base, f, G, 1), distance(base, f, G, 2)};
      }
    }
  }

  Table table{{"omega", "h1_eps_0.1", "h1_eps_0.05", "h1_eps_0.025", "h2_eps_0.1", "h2_eps_0.05", "h2_eps_0.025"}, {}};
  std::vector<std::string> raw_cols{"omega", "eps", "s"};
  for (int M : meshes) raw_cols.push_back("d_M" + std::to_string(M));
  raw_cols.push_back("richardson_p1");
  raw_cols.push_back("richardson_p2.5");
  Table raw{raw_cols, {}};
  std::vector<std::vector<std::array<double, 2>>> ext(omegas.size(), std::vector<std::array<double, 2>>(eps.size()));
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    std::vector<double> row{static_cast<double>(omegas[i])};
    for (int s = 0; s < 2; ++s) {
      for (std::size_t j = 0; j < eps.size(); ++j) {
        const double v = richardson(d[1][i][j][static_cast<std::size_t>(s)], d[2][i][j][static_cast<std::size_t>(s)], 1.0);
        ext[i][j][static_cast<std::size_t>(s)] = v;
        row.push_back(v);
        raw.add({static_cast<double>(omegas[i]), eps[j], static_cast<double>(s + 1), d[0][i][j][static_cast<std::size_t>(s)],
                 d[1][i][j][static_cast<std::size_t>(s)], d[2][i][j][static_cast<std::size_t>(s)], v,
                 richardson(d[1][i][j][static_cast<std::size_t>(s)], d[2][i][j][static_cast<std::size_t>(s)], 2.5)});
      }
    }
    table.add(row);
  }

  ExperimentResult r;
  Json tab = Json::array();
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    Json row = Json::array();
    for (int s = 0; s < 2; ++s) {
      for (std::size_t j = 0; j < eps.size(); ++j) row.push_back(ext[i][j][static_cast<std::size_t>(s)]);
    }
    tab.push_back(row);
  }
  r.summary["table"] = tab;
  // scaling in eps for each omega, in omega for each eps
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    std::vector<double> h1, h2;
    for (std::size_t j = 0; j < eps.size(); ++j) {
      h1.push_back(ext[i][j][0]);
      h2.push_back(ext[i][j][1]);
    }
    r.summary["eps_slope_h1"].push_back(loglog_slope(eps, h1));
    r.summary["eps_slope_h2"].push_back(loglog_slope(eps, h2));
  }
  std::vector<double> om(omegas.begin(), omegas.end());
  for (std::size_t j = 0; j < eps.size(); ++j) {
    std::vector<double> h1, h2;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      h1.push_back(ext[i][j][0]);
      h2.push_back(ext[i][j][1]);
    }
    double mean = 0.0;
    for (double v : h1) mean += v;
    mean /= static_cast<double>(h1.size());
    double dev = 0.0;
    for (double v : h1) dev = std::max(dev, std::abs(v / mean - 1.0));
    r.summary["omega_spread_h1"].push_back(dev);
    r.summary["omega_slope_h2"].push_back(loglog_slope(om, h2));
  }
  r.files.push_back({"wiggly_table.csv", "omega,h1_eps_0.1,h1_eps_0.05,h1_eps_0.025,h2_eps_0.1,h2_eps_0.05,h2_eps_0.025",
                     table.to_csv()});
  std::string raw_header;
  for (const auto& c : raw_cols) raw_header += (raw_header.empty() ? "" : ",") + c;
  r.files.push_back({"wiggly_raw.csv", raw_header, raw.to_csv()});
  return r;
}

ExperimentResult supercircle_norms(Settings& st) {
  const int M = st.mesh(80);
  const int d = st.degree(1);
  const double sigma = st.sigma();
  const std::size_t n = st.points(512);
  const std::vector<double> exps{0.5, 1.0, 1.5, 2.0, 2.5};
  st.config["log2_exponents"] = exps;

  const auto space = FormSpace::lagrange(M, d);
  const auto G = assemble_gram(space, sigma);
  Table t{{"r_exp", "norm_h1", "norm_h1_sq", "norm_h2", "norm_h2_sq"}, {}};
  ExperimentResult r;
  for (double e : exps) {
    const double rexp = std::pow(2.0, e);
    const auto f = evaluate_current(supercircle(rexp, n), space);
    const double n1 = dual_norm(f, G, 1);
    const double n2 = dual_norm(f, G, 2);
    t.add({rexp, n1, n1 * n1, n2, n2 * n2});
    Json j;
    j["r_exp"] = rexp;
    j["norm_h1"] = n1;
    j["norm_h2"] = n2;
    r.summary["norms"].push_back(j);
  }
  r.files.push_back({"supercircle_norms.csv", "r_exp,norm_h1,norm_h1_sq,norm_h2,norm_h2_sq", t.to_csv()});
  return r;
}

ExperimentResult supercircle_pca(Settings& st) {
  const int M = st.mesh(10);
  const int d = st.degree(1);
  const double sigma = st.sigma();
  const int s = st.order(1);
  const std::size_t n = st.points(512);
  const auto space = FormSpace::lagrange(M, d);
  const auto G = assemble_gram(space, sigma);

  std::vector<SampledCurve> curves;
  std::vector<std::string> labels;
  for (int k = -6; k <= 6; ++k) {
    const double rexp = std::pow(2.0, 0.5 * k);
    curves.push_back(supercircle(rexp, n));
    labels.push_back("r=2^" + format_double(0.5 * k));
  }
  const Matrix X = whitened_rows(curves, space, G, s, QuadratureRule::Midpoint);
  const Embedding e = pca(X, 2);

  ExperimentResult r;
  // consecutive gaps along the family: small at both ends when points bunch
  std::vector<double> gaps;
  for (Eigen::Index i = 0; i + 1 < e.coords.rows(); ++i) gaps.push_back((e.coords.row(i + 1) - e.coords.row(i)).norm());
  r.summary["gaps"] = gaps;
  r.summary["variance"] = e.variance;
  r.files.push_back({"supercircle_pca.csv", "label,class,x,y", embedding_csv(labels, {}, e.coords)});
  return r;
}

ExperimentResult random_shapes_mds(Settings& st) {
  const int N = st.monomial(10);
  const double sigma = st.sigma();
  const int s = st.order(1);
  const std::size_t n = st.points(512);
  const std::uint64_t seed = st.seed(2024);
  const std::size_t count = 32;
  st.config["shapes"] = count;

  const auto space = FormSpace::monomial(N);
  const auto G = assemble_gram(space, sigma);
  std::vector<SampledCurve> curves;
  std::vector<std::string> labels;
  for (const auto& c : random_shape_population(seed, count)) {
    curves.push_back(fourier_shape(c, n));
    labels.push_back("shape" + std::to_string(curves.size() - 1));
  }
  const Matrix X = whitened_rows(curves, space, G, s, QuadratureRule::Midpoint);
  const Matrix D = pairwise_distances(X);
  const Embedding init = pca(X, 2);
  const Embedding e = mds_stress(D, init);

  ExperimentResult r;
  r.summary["mean_error_pca"] = mean_distance_error(D, init.coords);
  r.summary["mean_error_mds"] = e.mean_error;
  r.summary["stress_pca"] = embedding_stress(D, init.coords);
  r.summary["stress_mds"] = e.stress;
  r.summary["iterations"] = e.iterations;
  r.summary["mean_distance"] = D.sum() / static_cast<double>(D.rows() * (D.rows() - 1));
  r.files.push_back({"mds_embedding.csv", "label,class,x,y", embedding_csv(labels, {}, e.coords)});
  r.files.push_back({"distances.csv", "square headerless", matrix_to_csv(D)});
  return r;
}

ExperimentResult fish_family(Settings& st) {
  const int N = st.monomial(10);
  const double sigma = st.sigma();
  const int s = st.order(1);
  const std::size_t n = st.points(512);
  const int count = 16;
  st.config["shapes"] = count;

  const auto space = FormSpace::monomial(N);
  const auto G = assemble_gram(space, sigma);
  std::vector<SampledCurve> curves;
  std::vector<std::string> labels;
  for (int k = 0; k < count; ++k) {
    const double a = static_cast<double>(k) / (count - 1);
    curves.push_back(fish_shape(a, n));
    labels.push_back("a=" + format_double(a));
  }
  const Matrix X = whitened_rows(curves, space, G, s, QuadratureRule::Midpoint);
  const Matrix D = pairwise_distances(X);
  const Embedding init = pca(X, 2);
  const Embedding e = mds_stress(D, init);

  ExperimentResult r;
  r.summary["mean_error_pca"] = mean_distance_error(D, init.coords);
  r.summary["mean_error_mds"] = e.mean_error;
  r.summary["mean_distance"] = D.sum() / static_cast<double>(D.rows() * (D.rows() - 1));
  r.files.push_back({"fish_embedding.csv", "label,class,x,y", embedding_csv(labels, {}, e.coords)});
  r.files.push_back({"distances.csv", "square headerless", matrix_to_csv(D)});
  return r;
}

ExperimentResult three_class_pca(Settings& st) {
  const int N = st.monomial(10);
  const double sigma = st.sigma();
  const int s = st.order(1);
  const std::size_t n = st.points(512);
  const std::uint64_t seed = st.seed(99);
  const int per_class = 10;
  st.config["per_class"] = per_class;
  st.config["class_offset"] = 0.05;
  st.config["coefficient_noise"] = 0.01;

  const auto space = FormSpace::monomial(N);
  const auto G = assemble_gram(space, sigma);
  std::vector<SampledCurve> curves;
  std::vector<std::string> labels;
  std::vector<int> tags;
  for (int c = 0; c < 3; ++c) {
    for (int k = 0; k < per_class; ++k) {
      const auto shape_seed = seed * 7919ULL + static_cast<std::uint64_t>(c * per_class + k + 1);
      curves.push_back(fourier_shape(three_class_coeffs(seed, c, shape_seed), n));
      labels.push_back("c" + std::to_string(c) + "_" + std::to_string(k));
      tags.push_back(c);
    }
  }
  const Matrix X = whitened_rows(curves, space, G, s, QuadratureRule::Midpoint);
  const Embedding e = pca(X, 2);
  const auto rep2 = class_separation(e.coords, tags);

  ExperimentResult r;
  r.summary["separation_2d"] = rep2.min_accuracy;
  for (int a = 0; a < 2; ++a) {
    const auto rep = class_separation(e.coords.col(a), tags);
    r.summary["separation_pc" + std::to_string(a + 1)] = rep.min_accuracy;
  }
  for (const auto& p : rep2.pairs) {
    Json j;
    j["classes"] = {p.class_a, p.class_b};
    j["accuracy"] = p.accuracy;
    r.summary["pairs"].push_back(j);
  }
  r.summary["variance"] = e.variance;
  r.files.push_back({"three_class_pca.csv", "label,class,x,y", embedding_csv(labels, tags, e.coords)});
  return r;
}

ExperimentResult line_distance(Settings& st) {
  const int M = st.mesh(320);
  const double sigma = st.sigma();
  const std::size_t n = st.points(2001);
  const double length = 1.6;
  const std::vector<double> eps{0.05, 0.1, 0.2};
  st.config["length"] = length;
  st.config["eps"] = eps;

  const auto space = FormSpace::lagrange(M, 1);
  const auto G = assemble_gram(space, sigma);
  Table t{{"eps", "s", "discrete_center", "discrete_average", "analytic", "rel_err"}, {}};
  ExperimentResult r;
  double worst = 0.0;
  for (double e : eps) {
    for (int s = 1; s <= 2; ++s) {
      const auto d = parallel_segment_distance(space, G, s, e, length, n);
      const double a = line_distance_per_unit_length(s, e, sigma);
      const double rel = d.center / a - 1.0;
      worst = std::max(worst, std::abs(rel));
      t.add({e, static_cast<double>(s), d.center, d.average, a, rel});
    }
  }
  r.summary["max_rel_err"] = worst;
  r.files.push_back({"line_distance.csv", "eps,s,discrete_center,discrete_average,analytic,rel_err", t.to_csv()});
  return r;
}

ExperimentResult representer_field(Settings& st) {
  const int N = st.monomial(10);
  const double sigma = st.sigma();
  const int s = st.order(1);
  const std::size_t n = st.points(512);
  const std::uint64_t seed = st.seed(17);
  const int grid = 41;
  st.config["grid"] = grid;

  const auto space = FormSpace::monomial(N);
  const auto G = assemble_gram(space, sigma);
  const auto curve = fourier_shape(random_shape_population(seed, 1).front(), n);
  const auto rep = representer(evaluate_current(curve, space), G, s);
  std::vector<Vec2> pts;
  const Rect dom = space.domain();
  for (int j = 0; j < grid; ++j) {
    for (int i = 0; i < grid; ++i) {
      pts.emplace_back(dom.x0 + dom.width() * i / (grid - 1), dom.y0 + dom.height() * j / (grid - 1));
    }
  }
  const auto field = representer_field_eval(rep, space, pts);
  Table t{{"x", "y", "bx", "by"}, {}};
  double vmax = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    t.add({pts[k].x(), pts[k].y(), field[k].x(), field[k].y()});
    vmax = std::max(vmax, field[k].norm());
  }
  ExperimentResult r;
  r.summary["max_magnitude"] = vmax;
  r.summary["norm"] = dual_norm(evaluate_current(curve, space), G, s);
  r.files.push_back({"representer_field.csv", "x,y,bx,by", t.to_csv()});
  r.files.push_back({"shape.csv", "t,x,y", curve_to_csv(curve)});
  return r;
}

ExperimentResult reconstruct_convergence(Settings& st) {
  const std::size_t n = st.points(20000);
  const std::uint64_t seed = st.seed(1);
  const std::vector<int> meshes{10, 20, 40, 80};
  const double radius = 0.5;
  const int centers = 64;
  const double offset = 0.05;
  st.config["meshes"] = meshes;
  st.config["centers"] = centers;
  st.config["center_offset"] = offset;

  // one-sided Hausdorff error max_s min_t |phi(t) - rec(s)|, sampled on each
  // reconstructed segment, averaged over circles with seeded offset centres
  auto hausdorff = [&](const ReconstructedCurve& rec, const Vec2& c, double& mean) {
    double err = 0.0, sum = 0.0;
    const std::size_t m = rec.points.size();
    for (std::size_t k = 0; k < m; ++k) {
      const Vec2 p = rec.points[k];
      const Vec2 q = rec.points[(k + 1) % m];
      for (int j = 0; j <= 8; ++j) {
        const double d = std::abs((p + (j / 8.0) * (q - p) - c).norm() - radius);
        err = std::max(err, d);
        sum += d;
      }
    }
    mean = sum / static_cast<double>(9 * m);
    return err;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-offset, offset);
  std::vector<double> max_err(meshes.size(), 0.0), mean_err(meshes.size(), 0.0);
  int used = 0;
  ExperimentResult r;
  for (int k = 0; k < centers; ++k) {
    const double cx = unif(rng);
    const Vec2 center(cx, unif(rng));
    const SampledCurve c = circle(n, radius, center);
    std::vector<double> e(meshes.size()), m(meshes.size());
    try {
      for (std::size_t i = 0; i < meshes.size(); ++i) {
        e[i] = hausdorff(reconstruct_pc(compute_jumps(c, build_mesh(meshes[i]))), center, m[i]);
      }
    } catch (const NotInGeneralPosition&) {
      continue;  // the circle crosses some cell edge twice
    }
    ++used;
    for (std::size_t i = 0; i < meshes.size(); ++i) {
      max_err[i] += e[i];
      mean_err[i] += m[i];
    }
    if (used == 1) {
      const auto mesh = build_mesh(meshes.front());
      const auto jumps = compute_jumps(c, mesh);
      std::string js = "cell_id,dx,dy\n";
      for (int cell = 0; cell < mesh.triangle_count(); ++cell) {
        if (!jumps.occupied(cell)) continue;
        const Vec2 v = jumps.jump[static_cast<std::size_t>(cell)];
        js += std::to_string(cell) + "," + format_double(v.x()) + "," + format_double(v.y()) + "\n";
      }
      const std::string tag = "_M" + std::to_string(meshes.front());
      r.files.push_back({"jumps" + tag + ".csv", "cell_id,dx,dy", js});
      r.files.push_back({"reconstruction" + tag + ".csv", "t,x,y", curve_to_csv(reconstruct_pc(jumps).as_curve())});
      r.files.push_back({"circle.csv", "t,x,y", curve_to_csv(c)});
    }
  }
  if (used == 0) throw NotInGeneralPosition("no sampled circle is in general position on every mesh");
  Table t{{"M", "h", "max_error", "mean_error"}, {}};
  std::vector<double> hs;
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    max_err[i] /= used;
    mean_err[i] /= used;
    hs.push_back(2.0 / meshes[i]);
    t.add({static_cast<double>(meshes[i]), hs.back(), max_err[i], mean_err[i]});
  }
  r.summary["slope"] = loglog_slope(hs, max_err);
  r.summary["slope_mean_error"] = loglog_slope(hs, mean_err);
  r.summary["errors"] = max_err;
  r.summary["circles_used"] = used;

  // 1D moment solvers on monomials over [0,1]
  auto poly_err = [](const std::function<double(double)>& g, const Poly1D& p) {
    double e = 0.0;
    for (int k = 0; k <= 2000; ++k) e = std::max(e, std::abs(g(k / 2000.0) - p(k / 2000.0)));
    return e;
  };
  const auto q = quadratic_reconstruct(0.0, 1.0, 0.25, 1.0);
  const auto cu = cubic_reconstruct(0.0, 1.0, 0.2, 1.0 / 6.0, 1.0);
  const auto qu = quartic_reconstruct(0.0, 1.0, 1.0 / 6.0, 1.0 / 7.0, 1.0 / 11.0, 1.0);
  r.summary["quadratic_x3_error_per_d3"] = poly_err([](double x) { return x * x * x; }, q) / 6.0;
  r.summary["cubic_x4_error_per_d4"] = poly_err([](double x) { return std::pow(x, 4); }, cu) / 24.0;
  r.summary["quartic_x5_error_per_d5"] = poly_err([](double x) { return std::pow(x, 5); }, qu.selected) / 120.0;
  r.summary["quartic_fallback"] = qu.fallback;
  r.files.push_back({"reconstruct_convergence.csv", "M,h,max_error,mean_error", t.to_csv()});
  return r;
}

using PresetFn = ExperimentResult (*)(Settings&);

const std::vector<std::pair<std::string, PresetFn>>& registry() {
  static const std::vector<std::pair<std::string, PresetFn>> r{
      {"reparam", reparam},
      {"quad-convergence", quad_convergence},
      {"noise-robustness", noise_robustness},
      {"rough-shapes", rough_shapes},
      {"metric-convergence", metric_convergence},
      {"wiggly-table", wiggly_table},
      {"supercircle-norms", supercircle_norms},
      {"supercircle-pca", supercircle_pca},
      {"random-shapes-mds", random_shapes_mds},
      {"fish-family", fish_family},
      {"three-class-pca", three_class_pca},
      {"line-distance", line_distance},
      {"representer-field", representer_field},
      {"reconstruct-convergence", reconstruct_convergence},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& p : registry()) v.push_back(p.first);
    return v;
  }();
  return names;
}

ExperimentResult run_experiment(const std::string& preset, const ExperimentOptions& opts) {
  for (const auto& [name, fn] : registry()) {
    if (name != preset) continue;
    Settings st(name, opts);
    ExperimentResult r = fn(st);
    r.preset = name;
    r.config = st.config;
    return r;
  }
  std::string list;
  for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
  throw ConfigurationError("unknown preset '" + preset + "'; available: " + list);
}

// ---------------------------------------------------------------------------
// shape families

SampledCurve fish_shape(double a, std::size_t n) {
  if (n < 3) throw InvalidCurve("a closed curve needs at least 3 points");
  SampledCurve c;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    const double th = 2.0 * std::numbers::pi * t;
    const double s = std::sin(th);
    const Vec2 base(0.6 * (std::cos(th) - s * s / std::numbers::sqrt2), 0.6 * std::cos(th) * s);
    const Vec2 pert(0.05 * std::cos(3.0 * th), 0.05 * std::sin(2.0 * th));
    c.params.push_back(t);
    c.points.push_back(base + a * pert);
  }
  return c;
}

FourierCoeffs three_class_coeffs(std::uint64_t base_seed, int c, std::uint64_t shape_seed) {
  FourierCoeffs z = random_smooth_coeffs(base_seed);
  std::mt19937_64 rng(shape_seed);
  std::normal_distribution<double> noise(0.0, 0.01);
  const double th = 2.0 * std::numbers::pi * c / 3.0;
  const double n1 = noise(rng), n2 = noise(rng), n3 = noise(rng), n4 = noise(rng);
  z[3] += std::complex<double>(0.05 * std::cos(th) + n1, n2);
  z[4] += std::complex<double>(0.05 * std::sin(th) + n3, n4);
  return z;
}

std::vector<FourierCoeffs> random_shape_population(std::uint64_t seed, std::size_t count) {
  std::vector<FourierCoeffs> out;
  for (std::uint64_t k = 0; out.size() < count; ++k) {
    auto c = random_smooth_coeffs(seed + k);
    if (max_radius(c) < 0.95) out.push_back(std::move(c));
  }
  return out;
}

LinePairDistance parallel_segment_distance(const FormSpace& space, const GramOperator& G, int s, double eps,
                                           double length, std::size_t points) {
  auto segment = [&](double y) {
    SampledCurve c = segment_line(points);
    for (auto& p : c.points) p = Vec2(-0.5 * length + length * p.x(), y);
    return c;
  };
  const auto fa = evaluate_current(segment(-0.5 * eps), space);
  const auto fb = evaluate_current(segment(0.5 * eps), space);
  const auto diff = fa - fb;
  const auto rep = representer(diff, G, s);
  const auto v = representer_field_eval(rep, space, {Vec2(0.0, -0.5 * eps), Vec2(0.0, 0.5 * eps)});
  const double density = v[0].x() - v[1].x();
  const double sigma = G.sigma();
  const double d2 = diff.fx.dot(rep.bx) + diff.fy.dot(rep.by);
  return {std::sqrt(sigma * std::max(density, 0.0)), std::sqrt(sigma * d2 / length)};
}

}  // namespace shapecur
