// shapecur: currents, dual-norm distances and the experiment presets.

#include "shapecur/currents.hpp"
#include "shapecur/experiments.hpp"
#include "shapecur/io.hpp"
#include "shapecur/metric.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace shapecur;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kIo = 3, kNumeric = 4 };

struct SpaceFlags {
  std::optional<int> mesh;
  std::optional<int> degree;
  std::optional<int> monomial;
  std::optional<double> sigma;
  std::optional<int> s;
  std::optional<std::string> rule;
  std::optional<std::size_t> points;
  std::optional<std::uint64_t> seed;

  void add_space(CLI::App* app) {
    app->add_option("--mesh", mesh, "Lagrange space: cells per side");
    app->add_option("--degree", degree, "Lagrange space: polynomial degree");
    app->add_option("--monomial", monomial, "monomial space: x^m y^n with m+n < N");
  }
  void add_metric(CLI::App* app) {
    app->add_option("--sigma", sigma, "metric length scale (default 1/sqrt(10))");
    app->add_option("--s", s, "Sobolev order (default 1)");
  }
  void add_rule(CLI::App* app) {
    app->add_option("--rule", rule, "quadrature rule")->check(CLI::IsMember({"midpoint", "simpson"}));
  }

  FormSpace space() const {
    if (monomial && (mesh || degree)) throw ConfigurationError("--monomial excludes --mesh/--degree");
    if (monomial) return FormSpace::monomial(*monomial);
    return FormSpace::lagrange(mesh.value_or(10), degree.value_or(1));
  }
  QuadratureRule quadrature() const { return rule ? parse_rule(*rule) : QuadratureRule::Midpoint; }
};

CurrentVector load_current(const std::string& path, const SpaceFlags& f) {
  if (fs::path(path).extension() == ".json") return current_from_json(read_text_file(path));
  return evaluate_current(load_curve(path), f.space(), f.quadrature());
}

void write_result(const ExperimentResult& r, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  write_text_file((dir / "config.json").string(), r.config.dump(2) + "\n");
  write_text_file((dir / "summary.json").string(), dump_rounded(r.summary) + "\n");
  Json manifest;
  manifest["preset"] = r.preset;
  manifest["files"] = Json::array();
  manifest["files"].push_back({{"name", "config.json"}, {"columns", "json"}});
  manifest["files"].push_back({{"name", "summary.json"}, {"columns", "json"}});
  for (const auto& a : r.files) {
    write_text_file((dir / a.name).string(), a.content);
    manifest["files"].push_back({{"name", a.name}, {"columns", a.columns}});
  }
  write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
}

SampledCurve generate(const std::string& shape, std::size_t n, double eps, int omega, double r, double a,
                      std::uint64_t seed) {
  if (shape == "circle") return circle(n);
  if (shape == "bowtie") return bowtie(n);
  if (shape == "wiggly") return wiggly_circle(eps, omega, n);
  if (shape == "supercircle") return supercircle(r, n);
  if (shape == "fish") return fish_shape(a, n);
  if (shape == "random") return fourier_shape(random_shape_population(seed, 1).front(), n);
  throw ConfigurationError("unknown shape '" + shape + "' (circle|bowtie|wiggly|supercircle|fish|random)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape currents: evaluation, dual-norm distances and experiment presets"};
  app.require_subcommand(1);
  SpaceFlags flags;

  auto* cur = app.add_subcommand("current", "current vector of a curve CSV, as JSON");
  std::string curve_file, out_file;
  cur->add_option("curve", curve_file, "curve CSV (t,x,y)")->required();
  cur->add_option("--out", out_file, "output file (default stdout)");
  flags.add_space(cur);
  flags.add_rule(cur);

  auto* dist = app.add_subcommand("distance", "dual-norm distance between two curves or current JSON files");
  std::string file_a, file_b;
  dist->add_option("a", file_a, "curve CSV or current JSON")->required();
  dist->add_option("b", file_b, "curve CSV or current JSON")->required();
  flags.add_space(dist);
  flags.add_metric(dist);
  flags.add_rule(dist);

  auto* exp = app.add_subcommand("experiment", "run a named preset and write its artifacts");
  std::string preset, out_dir, config_file;
  exp->add_option("preset", preset, "preset name");
  exp->add_option("--out", out_dir, "output directory (default results/<preset>)");
  exp->add_option("--config", config_file, "config.json of an earlier run");
  flags.add_space(exp);
  flags.add_metric(exp);
  flags.add_rule(exp);
  exp->add_option("--points", flags.points, "samples per curve");
  exp->add_option("--seed", flags.seed, "random seed");

  auto* gen = app.add_subcommand("generate", "write a sampled test shape as curve CSV");
  std::string shape;
  std::size_t gen_points = 512;
  double eps = 0.1, rexp = 2.0, fish_a = 0.0;
  int omega = 2;
  std::uint64_t gen_seed = 1;
  gen->add_option("shape", shape, "circle|bowtie|wiggly|supercircle|fish|random")->required();
  gen->add_option("--points", gen_points, "samples");
  gen->add_option("--eps", eps, "wiggly amplitude");
  gen->add_option("--omega", omega, "wiggly frequency");
  gen->add_option("--r", rexp, "supercircle exponent");
  gen->add_option("--a", fish_a, "fish perturbation weight");
  gen->add_option("--seed", gen_seed, "random shape seed");
  gen->add_option("--out", out_file, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*cur) {
      const auto f = evaluate_current(load_curve(curve_file), flags.space(), flags.quadrature());
      const std::string j = current_to_json(f) + "\n";
      if (out_file.empty()) {
        std::cout << j;
      } else {
        write_text_file(out_file, j);
      }
    } else if (*dist) {
      const auto a = load_current(file_a, flags);
      const auto b = load_current(file_b, flags);
      if (!(a.space == b.space)) throw ConfigurationError("the two currents live on different form spaces");
      const auto G = assemble_gram(FormSpace::from_descriptor(a.space), flags.sigma.value_or(kDefaultSigma));
      std::cout << format_double(distance(a, b, G, flags.s.value_or(1))) << "\n";
    } else if (*exp) {
      ExperimentOptions opts;
      if (!config_file.empty()) {
        Json cfg;
        try {
          cfg = Json::parse(read_text_file(config_file));
        } catch (const nlohmann::json::exception& e) {
          throw ConfigurationError(config_file + ": " + e.what());
        }
        opts = ExperimentOptions::from_json(cfg);
        if (preset.empty() && cfg.contains("preset")) preset = cfg["preset"].get<std::string>();
      }
      if (flags.mesh) opts.mesh = flags.mesh;
      if (flags.degree) opts.degree = flags.degree;
      if (flags.monomial) opts.monomial = flags.monomial;
      if (flags.sigma) opts.sigma = flags.sigma;
      if (flags.s) opts.s = flags.s;
      if (flags.rule) opts.rule = parse_rule(*flags.rule);
      if (flags.points) opts.points = flags.points;
      if (flags.seed) opts.seed = flags.seed;
      if (preset.empty()) throw ConfigurationError("no preset given");
      const auto r = run_experiment(preset, opts);
      write_result(r, out_dir.empty() ? fs::path("results") / preset : fs::path(out_dir));
      std::cout << dump_rounded(r.summary) << "\n";
    } else if (*gen) {
      const std::string csv = curve_to_csv(generate(shape, gen_points, eps, omega, rexp, fish_a, gen_seed));
      if (out_file.empty()) {
        std::cout << csv;
      } else {
        write_text_file(out_file, csv);
      }
    }
  } catch (const ConfigurationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}
