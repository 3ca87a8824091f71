// polysub command-line front end.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polysub/error.hpp"
#include "polysub/harness.hpp"
#include "polysub/rounding.hpp"
#include "polysub/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace polysub;

namespace {

// `key=value` overrides; numeric values are stored as numbers.
void apply_params(Json& params, const std::vector<std::string>& kv) {
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("parameter `" + item + "` is not key=value");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    try {
      params[key] = Json::parse(val);
    } catch (const nlohmann::json::parse_error&) {
      params[key] = val;
    }
  }
}

std::vector<EstimatorTag> parse_grid(const std::string& s) {
  std::vector<EstimatorTag> grid;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) grid.push_back(EstimatorTag::parse(item));
  }
  return grid;
}

fs::path output_root(const std::string& flag, const fs::path& from_config, bool config_set) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputRootEnv); env && *env) return env;
  if (config_set) return from_config;
  return "out";
}

struct SourceFlags {
  std::string generator;
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::vector<std::string> params;
  std::string path;
  std::string movies;

  void attach(CLI::App* app) {
    app->add_option("-g,--generator", generator,
                    "smsynth | imsynth1 | imsynth2 | flsynth1 | imrandom | file | epinions | movielens");
    app->add_option("-s,--seed", seed, "Instance seed")->each([this](const std::string&) { seed_set = true; });
    app->add_option("-p,--param", params, "Generator parameter override key=value");
    app->add_option("--path", path, "Instance JSON, SNAP edge list or ratings.dat");
    app->add_option("--movies", movies, "MovieLens movies.dat");
  }

  void apply(InstanceSource& src) const {
    if (!generator.empty()) src.generator = generator;
    if (seed_set) src.seed = seed;
    if (!path.empty()) {
      src.path = path;
      if (generator.empty() && src.generator == "smsynth") src.generator = "file";
    }
    if (!movies.empty()) src.movies_path = movies;
    apply_params(src.params, params);
  }
};

void print_summary(const RunSummary& s) {
  std::cout << "instance " << s.instance << "  f*=" << s.f_star << "\n";
  for (const auto& r : s.runs) {
    if (r.ok) {
      std::cout << "  " << r.estimator << "  f=" << r.f << "  err=" << r.err << "  seconds=" << r.seconds
                << "  build=" << r.build_seconds;
      if (r.rounded_f) std::cout << "  rounded_f=" << *r.rounded_f;
      std::cout << "\n";
    } else {
      std::cout << "  " << r.estimator << "  FAILED: " << r.error << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous greedy with polynomial gradient estimators"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate or load an instance and write it as JSON");
  SourceFlags gen_src;
  gen_src.attach(gen);
  std::string gen_out;
  gen->add_option("-o,--output", gen_out, "Output instance JSON")->required();

  // run
  auto* run = app.add_subcommand("run", "Run the estimator grid on one instance");
  SourceFlags run_src;
  run_src.attach(run);
  std::string run_config, run_grid, run_out, run_round;
  double run_gamma = 0.0;
  std::size_t run_record = 0;
  std::uint64_t run_seed = 0;
  bool run_seed_set = false, include_build = false;
  run->add_option("-c,--config", run_config, "Experiment config JSON");
  run->add_option("--grid", run_grid, "Estimators, e.g. POLY1,POLY2,SAMP100");
  run->add_option("--gamma", run_gamma, "Step size");
  run->add_option("--record-every", run_record, "Trace stride");
  run->add_option("--sample-seed", run_seed, "Base seed for sampling cells")
      ->each([&](const std::string&) { run_seed_set = true; });
  run->add_option("-o,--out", run_out, "Output root (default $POLYSUB_OUT or ./out)");
  run->add_option("--round", run_round, "pipage | swap | none")->check(CLI::IsMember({"pipage", "swap", "none"}));
  run->add_flag("--include-build", include_build, "Count estimator construction in seconds");

  // verify
  auto* ver = app.add_subcommand("verify", "Run the guarded oracle suites on a small instance");
  VerifyConfig vcfg;
  ver->add_option("--problem", vcfg.problem, "sm | im | fl")->check(CLI::IsMember({"sm", "im", "fl"}));
  ver->add_option("-n,--ground", vcfg.ground, "Ground set size");
  ver->add_option("-s,--seed", vcfg.seed, "Instance seed");
  ver->add_option("--guard", vcfg.guard, "Largest N the exhaustive oracles accept");
  ver->add_option("--points", vcfg.points, "Random points for the bias check");

  // plot
  auto* plot = app.add_subcommand("plot", "Render trace CSVs as an SVG line chart");
  std::vector<std::string> plot_traces;
  std::string plot_out, plot_summary;
  double plot_fstar = 0.0;
  bool plot_fstar_set = false;
  PlotOptions popts;
  plot->add_option("traces", plot_traces, "Trace CSV files (label = parent directory)")->required();
  plot->add_option("-o,--output", plot_out, "SVG path")->required();
  plot->add_flag("--loglog", popts.loglog, "Log-scale both axes");
  plot->add_option("--f-star", plot_fstar, "Plot the relative gap to this utility")
      ->each([&](const std::string&) { plot_fstar_set = true; });
  plot->add_option("--summary", plot_summary, "Take f* from a summary.json");

  // round
  auto* rnd = app.add_subcommand("round", "Run one estimator and round its fractional solution");
  SourceFlags rnd_src;
  rnd_src.attach(rnd);
  std::string rnd_mode = "pipage", rnd_estimator = "POLY3";
  double rnd_gamma = 0.01;
  std::uint64_t rnd_seed = 0;
  rnd->add_option("--round", rnd_mode, "pipage | swap | none")->check(CLI::IsMember({"pipage", "swap", "none"}));
  rnd->add_option("--estimator", rnd_estimator, "Estimator driving the greedy run");
  rnd->add_option("--gamma", rnd_gamma, "Step size");
  rnd->add_option("--round-seed", rnd_seed, "Swap rounding / sampling seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      InstanceSource src;
      gen_src.apply(src);
      const auto inst = make_instance(src);
      save_instance(inst, gen_out);
      std::cout << "wrote " << inst.name << " (N=" << inst.objective.ground_size()
                << ", terms=" << inst.objective.term_count() << ") to " << gen_out << "\n";
      return 0;
    }

    if (run->parsed()) {
      ExperimentConfig cfg;
      bool config_set = false;
      if (!run_config.empty()) {
        const auto j = read_json_file(run_config);
        cfg = ExperimentConfig::from_json(j);
        config_set = j.contains("output_dir");
      }
      run_src.apply(cfg.source);
      if (!run_grid.empty()) cfg.grid = parse_grid(run_grid);
      if (cfg.grid.empty()) {
        for (const char* t : {"POLY1", "POLY2", "POLY3", "SAMP1", "SAMP10", "SAMP100", "SAMP1000"}) {
          cfg.grid.push_back(EstimatorTag::parse(t));
        }
      }
      if (run_gamma > 0.0) cfg.gamma = run_gamma;
      if (run_record > 0) cfg.record_every = run_record;
      if (run_seed_set) cfg.seed = run_seed;
      if (!run_round.empty()) cfg.rounding = rounding_mode_from_string(run_round);
      if (include_build) cfg.include_build = true;
      cfg.output_dir = output_root(run_out, cfg.output_dir, config_set);
      const auto summary = run_experiment(cfg);
      print_summary(summary);
      std::cout << "outputs under " << (cfg.output_dir / summary.instance).string() << "\n";
      const bool all_ok = std::all_of(summary.runs.begin(), summary.runs.end(), [](const auto& r) { return r.ok; });
      return all_ok ? 0 : 1;
    }

    if (ver->parsed()) {
      std::cout << "kernels: " << simd::isa_name(simd::active_isa()) << "\n";
      const auto report = verify(vcfg);
      std::cout << report.to_text();
      return report.all_pass() ? 0 : 1;
    }

    if (plot->parsed()) {
      if (!plot_summary.empty()) {
        popts.f_star = RunSummary::from_json(read_json_file(plot_summary)).f_star;
      }
      if (plot_fstar_set) popts.f_star = plot_fstar;
      std::vector<PlotSeries> series;
      for (const auto& path : plot_traces) {
        std::ifstream in(path);
        if (!in) throw InputError("cannot open " + path);
        const auto trace = GreedyTrace::read_csv(in);
        auto label = fs::path(path).parent_path().filename().string();
        if (label.empty()) label = fs::path(path).stem().string();
        series.push_back(series_from_trace(label, trace, popts));
      }
      const auto svg = render_svg(series, popts);
      for (const auto& w : svg.warnings) std::cerr << "warning: " << w << "\n";
      write_text_file(plot_out, svg.svg);
      std::cout << "wrote " << plot_out << "\n";
      return 0;
    }

    if (rnd->parsed()) {
      InstanceSource src;
      rnd_src.apply(src);
      const auto inst = make_instance(src);
      ExperimentConfig cfg;
      cfg.grid = {EstimatorTag::parse(rnd_estimator)};
      cfg.gamma = rnd_gamma;
      cfg.seed = rnd_seed;
      cfg.rounding = rounding_mode_from_string(rnd_mode);
      cfg.write_files = false;
      const auto summary = run_experiment(inst, cfg);
      const auto& r = summary.runs.front();
      if (!r.ok) throw std::runtime_error(r.error);
      std::cout << "fractional f(y)=" << r.f << "\n";
      if (r.rounded_f) {
        std::cout << "rounded f(x)=" << *r.rounded_f << "\nx=";
        for (std::size_t i = 0; i < r.rounded.size(); ++i) {
          if (r.rounded[i]) std::cout << i << ' ';
        }
        std::cout << "\n";
      }
      return 0;
    }
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
