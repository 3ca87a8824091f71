#include "polysub/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>

#include "polysub/datasets.hpp"
#include "polysub/error.hpp"
#include "polysub/rounding.hpp"

namespace polysub {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

template <class T>
T param_or(const Json& params, const char* key, T fallback) {
  if (!params.is_object() || !params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("generator parameter `") + key + "`: " + e.what());
  }
}

std::vector<double> random_point(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<double> y(n);
  for (auto& v : y) v = static_cast<double>(engine() >> 11) * 0x1p-53;
  return y;
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

// --- sources and config ---------------------------------------------------

Json InstanceSource::to_json() const {
  Json j{{"generator", generator}, {"seed", seed}, {"params", params}};
  if (!path.empty()) j["path"] = path;
  if (!movies_path.empty()) j["movies_path"] = movies_path;
  return j;
}

InstanceSource InstanceSource::from_json(const Json& j) {
  InstanceSource s;
  s.generator = param_or<std::string>(j, "generator", s.generator);
  s.seed = param_or<std::uint64_t>(j, "seed", s.seed);
  if (j.contains("params")) s.params = j.at("params");
  s.path = param_or<std::string>(j, "path", "");
  s.movies_path = param_or<std::string>(j, "movies_path", "");
  return s;
}

Instance make_instance(const InstanceSource& src) {
  const auto& p = src.params;
  const auto& g = src.generator;
  if (g == "smsynth") {
    SmSynthParams sp;
    sp.ground = param_or(p, "ground", sp.ground);
    sp.similarity_blocks = param_or(p, "similarity_blocks", sp.similarity_blocks);
    sp.partitions = param_or(p, "partitions", sp.partitions);
    sp.capacity = param_or(p, "capacity", sp.capacity);
    return gen_sm_synth(src.seed, sp);
  }
  if (g == "imsynth1" || g == "imsynth2") {
    ImSynthParams ip;
    ip.degree = g == "imsynth1" ? ImSynthParams::Degree::Uniform : ImSynthParams::Degree::PowerLaw;
    ip.left = param_or(p, "left", ip.left);
    ip.right = param_or(p, "right", ip.right);
    ip.edges = param_or(p, "edges", ip.edges);
    ip.partitions = param_or(p, "partitions", ip.partitions);
    ip.capacity = param_or(p, "capacity", ip.capacity);
    ip.exponent = param_or(p, "exponent", ip.exponent);
    ip.edge_probability = param_or(p, "edge_probability", ip.edge_probability);
    ip.cascades = param_or(p, "cascades", ip.cascades);
    return gen_im_synth(src.seed, ip);
  }
  if (g == "flsynth1") {
    FlSynthParams fp;
    fp.facilities = param_or(p, "facilities", fp.facilities);
    fp.customers = param_or(p, "customers", fp.customers);
    fp.edges = param_or(p, "edges", fp.edges);
    fp.partitions = param_or(p, "partitions", fp.partitions);
    fp.capacity = param_or(p, "capacity", fp.capacity);
    return gen_fl_synth(src.seed, fp);
  }
  if (g == "imrandom") {
    ImRandomParams rp;
    rp.nodes = param_or(p, "nodes", rp.nodes);
    rp.edges = param_or(p, "edges", rp.edges);
    rp.edge_probability = param_or(p, "edge_probability", rp.edge_probability);
    rp.cascades = param_or(p, "cascades", rp.cascades);
    rp.partitions = param_or(p, "partitions", rp.partitions);
    rp.capacity = param_or(p, "capacity", rp.capacity);
    return gen_im_random(src.seed, rp);
  }
  if (g == "file") {
    if (src.path.empty()) throw InputError("file source needs a path");
    return load_instance(src.path);
  }
  if (g == "epinions") {
    if (src.path.empty()) throw InputError("epinions source needs an edge-list path");
    EpinionsParams ep;
    ep.nodes = param_or(p, "nodes", ep.nodes);
    ep.cascades = param_or(p, "cascades", ep.cascades);
    ep.edge_probability = param_or(p, "edge_probability", ep.edge_probability);
    ep.partitions = param_or(p, "partitions", ep.partitions);
    ep.capacity = param_or(p, "capacity", ep.capacity);
    return build_epinions(load_snap_edges(src.path), src.seed, ep);
  }
  if (g == "movielens") {
    if (src.path.empty() || src.movies_path.empty()) throw InputError("movielens source needs ratings and movies paths");
    MovieLensParams mp;
    mp.users = param_or(p, "users", mp.users);
    mp.movies = param_or(p, "movies", mp.movies);
    mp.capacity = param_or(p, "capacity", mp.capacity);
    mp.max_rating = param_or(p, "max_rating", mp.max_rating);
    return build_movielens(load_movielens_ratings(src.path), load_movielens_movies(src.movies_path), src.seed, mp);
  }
  throw InputError("unknown instance generator `" + g + "`");
}

std::string to_string(RoundingMode mode) {
  switch (mode) {
    case RoundingMode::None: return "none";
    case RoundingMode::Pipage: return "pipage";
    case RoundingMode::Swap: return "swap";
  }
  return "none";
}

RoundingMode rounding_mode_from_string(const std::string& s) {
  if (s == "none") return RoundingMode::None;
  if (s == "pipage") return RoundingMode::Pipage;
  if (s == "swap") return RoundingMode::Swap;
  throw InputError("unknown rounding mode `" + s + "`");
}

Json ExperimentConfig::to_json() const {
  Json grid_j = Json::array();
  for (const auto& t : grid) grid_j.push_back(t.label());
  return Json{{"source", source.to_json()},
              {"grid", grid_j},
              {"gamma", gamma},
              {"record_every", record_every},
              {"rounding", to_string(rounding)},
              {"pipage_order", pipage_order},
              {"seed", seed},
              {"output_dir", output_dir.string()},
              {"oracle_guard", oracle_guard},
              {"eval_samples", eval_samples},
              {"eval_seed", eval_seed},
              {"eval_control_order", eval_control_order},
              {"include_build", include_build}};
}

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  ExperimentConfig c;
  if (j.contains("source")) c.source = InstanceSource::from_json(j.at("source"));
  if (j.contains("grid")) {
    for (const auto& t : j.at("grid")) c.grid.push_back(EstimatorTag::parse(t.get<std::string>()));
  }
  c.gamma = param_or(j, "gamma", c.gamma);
  c.record_every = param_or(j, "record_every", c.record_every);
  if (j.contains("rounding")) c.rounding = rounding_mode_from_string(j.at("rounding").get<std::string>());
  c.pipage_order = param_or(j, "pipage_order", c.pipage_order);
  c.seed = param_or(j, "seed", c.seed);
  c.output_dir = param_or<std::string>(j, "output_dir", c.output_dir.string());
  c.oracle_guard = param_or(j, "oracle_guard", c.oracle_guard);
  c.eval_samples = param_or(j, "eval_samples", c.eval_samples);
  c.eval_seed = param_or(j, "eval_seed", c.eval_seed);
  c.eval_control_order = param_or(j, "eval_control_order", c.eval_control_order);
  c.include_build = param_or(j, "include_build", c.include_build);
  return c;
}

void ExperimentConfig::validate() const {
  if (grid.empty()) throw InputError("estimator grid is empty");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InputError("gamma must lie in (0, 1]");
  if (eval_samples == 0) throw InputError("eval_samples must be positive");
}

// --- summary ------------------------------------------------------------------

double relative_error(double f, double f_star) {
  if (f_star == 0.0) return f - f_star;
  return (f - f_star) / std::abs(f_star);
}

std::uint64_t cell_seed(std::uint64_t base, const EstimatorTag& tag) {
  return derive_seed(derive_seed(base, static_cast<std::uint64_t>(tag.kind)), tag.parameter);
}

Json RunSummary::to_json() const {
  Json runs_j = Json::array();
  for (const auto& r : runs) {
    Json rj{{"estimator", r.estimator}, {"ok", r.ok}};
    if (r.ok) {
      rj["f"] = r.f;
      rj["seconds"] = r.seconds;
      rj["err"] = r.err;
      rj["loop_seconds"] = r.loop_seconds;
      rj["gradient_seconds"] = r.gradient_seconds;
      rj["build_seconds"] = r.build_seconds;
      if (r.rounded_f) rj["rounded_f"] = *r.rounded_f;
    } else {
      rj["f"] = nullptr;
      rj["seconds"] = nullptr;
      rj["err"] = nullptr;
      rj["error"] = r.error;
    }
    runs_j.push_back(std::move(rj));
  }
  return Json{{"instance", instance}, {"runs", std::move(runs_j)}, {"f_star", f_star}};
}

RunSummary RunSummary::from_json(const Json& j) {
  RunSummary s;
  try {
    s.instance = j.at("instance").get<std::string>();
    s.f_star = j.at("f_star").get<double>();
    for (const auto& rj : j.at("runs")) {
      RunRecord r;
      r.estimator = rj.at("estimator").get<std::string>();
      r.ok = rj.contains("ok") ? rj.at("ok").get<bool>() : !rj.at("f").is_null();
      if (r.ok) {
        r.f = rj.at("f").get<double>();
        r.seconds = rj.at("seconds").get<double>();
        r.err = rj.at("err").get<double>();
        if (rj.contains("loop_seconds")) r.loop_seconds = rj.at("loop_seconds").get<double>();
        if (rj.contains("gradient_seconds")) r.gradient_seconds = rj.at("gradient_seconds").get<double>();
        if (rj.contains("build_seconds")) r.build_seconds = rj.at("build_seconds").get<double>();
        if (rj.contains("rounded_f")) r.rounded_f = rj.at("rounded_f").get<double>();
      } else if (rj.contains("error")) {
        r.error = rj.at("error").get<std::string>();
      }
      s.runs.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed summary: ") + e.what());
  }
  return s;
}

UtilityEvaluator::UtilityEvaluator(const Instance& inst, const ExperimentConfig& cfg) : inst_(&inst), cfg_(cfg) {
  const auto& obj = inst.objective;
  if (obj.ground_size() <= cfg.oracle_guard) return;
  sampler_.emplace(obj);
  if (cfg.eval_control_order > 0) {
    order_ = std::max(cfg.eval_control_order, obj.min_supported_order());
    control_.emplace(build_poly_estimator(obj, order_));
  }
}

double UtilityEvaluator::operator()(std::span<const double> y) const {
  const auto& obj = inst_->objective;
  if (!sampler_) return relaxation_exact(obj, y, cfg_.oracle_guard);
  const SampleConfig sc{cfg_.eval_samples, cfg_.eval_seed};
  if (!control_) return sampler_->value(y, sc);
  return control_->evaluate(y) + sampler_->remainder_value(y, sc, order_);
}

double utility(const Instance& inst, std::span<const double> y, const ExperimentConfig& cfg) {
  return UtilityEvaluator(inst, cfg)(y);
}

namespace {

RunRecord run_cell(const Instance& inst, const ExperimentConfig& cfg, const EstimatorTag& tag,
                   const UtilityEvaluator& utility_of) {
  RunRecord rec;
  rec.estimator = tag.label();
  const auto& obj = inst.objective;
  GreedyConfig gc{cfg.gamma, cfg.record_every, false};

  GreedyResult res;
  std::optional<MultilinearPoly> poly;
  switch (tag.kind) {
    case EstimatorTag::Kind::Poly: {
      const auto start = Clock::now();
      poly = build_poly_estimator(obj, static_cast<unsigned>(tag.parameter));
      const PolyEstimator pe(*poly, static_cast<unsigned>(tag.parameter));
      rec.build_seconds = since(start);
      res = continuous_greedy(
          inst.matroid, gc, [&](std::span<const double> y, std::size_t) { return pe.gradient(y); },
          [&](std::span<const double> y) { return pe.value(y); });
      break;
    }
    case EstimatorTag::Kind::Sample: {
      const auto start = Clock::now();
      const SampleEstimator se(obj);
      rec.build_seconds = since(start);
      const std::uint64_t base = cell_seed(cfg.seed, tag);
      res = continuous_greedy(
          inst.matroid, gc,
          [&](std::span<const double> y, std::size_t k) {
            return se.gradient(y, SampleConfig{tag.parameter, derive_seed(base, k)});
          },
          [&](std::span<const double> y) { return se.value(y, SampleConfig{tag.parameter, base}); });
      break;
    }
    case EstimatorTag::Kind::Exact: {
      res = continuous_greedy(
          inst.matroid, gc,
          [&](std::span<const double> y, std::size_t) { return grad_exact(obj, y, cfg.oracle_guard); },
          [&](std::span<const double> y) { return relaxation_exact(obj, y, cfg.oracle_guard); });
      break;
    }
  }

  rec.loop_seconds = res.loop_seconds;
  rec.gradient_seconds = res.gradient_seconds;
  rec.seconds = rec.loop_seconds + (cfg.include_build ? rec.build_seconds : 0.0);
  rec.f = utility_of(res.y);

  if (cfg.rounding == RoundingMode::Pipage) {
    if (!poly) poly = build_poly_estimator(obj, cfg.pipage_order);
    rec.rounded = pipage_round(*poly, inst.matroid, res.y).x;
  } else if (cfg.rounding == RoundingMode::Swap) {
    rec.rounded = swap_round(inst.matroid, res.steps, derive_seed(cell_seed(cfg.seed, tag), 0x5a));
  }
  if (!rec.rounded.empty()) rec.rounded_f = exact_value(obj, rec.rounded);

  rec.y = std::move(res.y);
  rec.trace = std::move(res.trace);
  rec.ok = true;
  return rec;
}

}  // namespace

RunSummary run_experiment(const Instance& inst, const ExperimentConfig& cfg) {
  cfg.validate();
  RunSummary summary;
  summary.instance = inst.name;
  const auto inst_dir = cfg.output_dir / inst.name;
  const UtilityEvaluator utility_of(inst, cfg);

  for (const auto& tag : cfg.grid) {
    RunRecord rec;
    try {
      rec = run_cell(inst, cfg, tag, utility_of);
      if (cfg.write_files) write_text_file(inst_dir / rec.estimator / "trace.csv", rec.trace.to_csv());
    } catch (const std::exception& e) {
      rec = RunRecord{};
      rec.estimator = tag.label();
      rec.ok = false;
      rec.error = e.what();
    }
    summary.runs.push_back(std::move(rec));
  }

  bool any = false;
  summary.f_star = -std::numeric_limits<double>::infinity();
  for (const auto& r : summary.runs) {
    if (r.ok) {
      any = true;
      summary.f_star = std::max(summary.f_star, r.f);
    }
  }
  if (!any) summary.f_star = 0.0;
  for (auto& r : summary.runs) {
    if (r.ok) r.err = relative_error(r.f, summary.f_star);
  }
  if (cfg.write_files) write_text_file(inst_dir / "summary.json", summary.to_json().dump(2) + "\n");
  return summary;
}

RunSummary run_experiment(const ExperimentConfig& cfg) { return run_experiment(make_instance(cfg.source), cfg); }

std::string strip_wall_clock(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    const auto pos = line.rfind(',');
    out += pos == std::string::npos ? line : line.substr(0, pos);
    out += '\n';
  }
  return out;
}

// --- plotting -------------------------------------------------------------------

PlotSeries series_from_trace(const std::string& label, const GreedyTrace& trace, const PlotOptions& opts) {
  PlotSeries s;
  s.label = label;
  for (const auto& row : trace.rows) {
    s.x.push_back(row.wall_seconds);
    if (opts.f_star) {
      const double fs = *opts.f_star;
      s.y.push_back(fs == 0.0 ? fs - row.estimate : (fs - row.estimate) / std::abs(fs));
    } else {
      s.y.push_back(row.estimate);
    }
  }
  return s;
}

SvgPlot render_svg(const std::vector<PlotSeries>& series, const PlotOptions& opts) {
  if (series.empty()) throw InputError("nothing to plot");
  SvgPlot out;
  std::size_t clipped = 0;
  auto tx = [&](double v) {
    if (!opts.loglog) return v;
    if (!(v > kLogFloor)) {
      if (!(v >= kLogFloor)) ++clipped;
      v = kLogFloor;
    }
    return std::log10(v);
  };

  std::vector<std::vector<std::pair<double, double>>> pts(series.size());
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (series[s].x.size() != series[s].y.size()) throw InputError("series x/y lengths differ");
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      const double x = tx(series[s].x[i]);
      const double y = tx(series[s].y[i]);
      pts[s].emplace_back(x, y);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (clipped > 0) {
    out.warnings.push_back(std::to_string(clipped) + " non-positive value(s) clipped to 1e-12 on log axes");
  }
  if (!(xmax > xmin)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymax > ymin)) {
    ymin -= 0.5;
    ymax += 0.5;
  }

  const double left = 70, right = 150, top = 20, bottom = 50;
  const double pw = opts.width - left - right;
  const double ph = opts.height - top - bottom;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

  auto escape = [](const std::string& s) {
    std::string e;
    for (char c : s) {
      if (c == '&') e += "&amp;";
      else if (c == '<') e += "&lt;";
      else if (c == '>') e += "&gt;";
      else e += c;
    }
    return e;
  };

  std::ostringstream svg;
  char buf[64];
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\"" << opts.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  const std::string xl = opts.loglog ? "log10 wall seconds" : "wall seconds";
  const std::string yl = std::string(opts.loglog ? "log10 " : "") + (opts.f_star ? "relative gap" : "estimate");
  svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << opts.height - 12 << "\" text-anchor=\"middle\">" << xl
      << "</text>\n";
  svg << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << top + ph / 2 << ")\">" << yl << "</text>\n";
  svg << "<text x=\"" << left << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"start\">" << format_number(xmin)
      << "</text>\n";
  svg << "<text x=\"" << left + pw << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"end\">" << format_number(xmax)
      << "</text>\n";
  svg << "<text x=\"" << left - 4 << "\" y=\"" << top + ph << "\" text-anchor=\"end\">" << format_number(ymin)
      << "</text>\n";
  svg << "<text x=\"" << left - 4 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << format_number(ymax)
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % (sizeof palette / sizeof palette[0])];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts[s].size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(pts[s][i].first), py(pts[s][i].second));
      svg << buf;
    }
    svg << "\"/>\n";
    const double ly = top + 14 + 18 * static_cast<double>(s);
    const double lx = left + pw + 12;
    svg << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 20 << "\" y2=\"" << ly - 4
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text class=\"legend\" x=\"" << lx + 26 << "\" y=\"" << ly << "\">" << escape(series[s].label)
        << "</text>\n";
  }
  svg << "</svg>\n";
  out.svg = svg.str();
  return out;
}

// --- verification -----------------------------------------------------------------

bool VerifyReport::all_pass() const {
  return std::all_of(lines.begin(), lines.end(), [](const VerifyLine& l) { return l.pass; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os << "instance " << instance << "\n";
  for (const auto& l : lines) {
    os << (l.pass ? "PASS " : "FAIL ") << l.name << "  measured=" << format_number(l.measured)
       << "  bound=" << format_number(l.bound) << "\n";
  }
  return os.str();
}

Instance verification_instance(const std::string& problem, std::size_t ground, std::uint64_t seed) {
  if (ground < 2) throw InputError("verification instances need at least two elements");
  const std::size_t blocks = 2;
  if (problem == "sm") {
    return gen_sm_synth(seed, SmSynthParams{ground, 2, blocks, 2});
  }
  if (problem == "im") {
    return gen_im_random(seed, ImRandomParams{ground, std::min(ground * (ground - 1), ground * 3 / 2), 0.5, 2, blocks, 2});
  }
  if (problem == "fl") {
    const std::size_t customers = 3;
    return gen_fl_synth(seed, FlSynthParams{ground, customers, std::min(ground * customers, 2 * ground), blocks, 2});
  }
  throw InputError("unknown verification problem `" + problem + "` (sm, im or fl)");
}

VerifyReport verify(const VerifyConfig& cfg) {
  if (cfg.ground > cfg.guard) {
    throw GuardError("refused: N=" + std::to_string(cfg.ground) + " exceeds the oracle guard of " +
                     std::to_string(cfg.guard));
  }
  const Instance inst = verification_instance(cfg.problem, cfg.ground, cfg.seed);
  const auto& obj = inst.objective;
  const std::size_t n = obj.ground_size();
  VerifyReport rep;
  rep.instance = inst.name + " N=" + std::to_string(n) + " M=" + std::to_string(obj.term_count());

  std::vector<std::vector<double>> points;
  for (std::size_t p = 0; p < cfg.points; ++p) points.push_back(random_point(n, derive_seed(cfg.seed, 100 + p)));

  // Gradient bias against the closed-form bound.
  for (unsigned L : cfg.orders) {
    if (L < obj.min_supported_order()) continue;
    const PolyEstimator pe(build_poly_estimator(obj, L), L);
    double worst = 0.0;
    for (const auto& y : points) {
      const auto exact = grad_exact(obj, y, cfg.guard);
      const auto approx = pe.gradient(y);
      worst = std::max(worst, l2_distance(exact.values, approx.values));
    }
    const double bound = bias_bound(obj.kind(), obj.term_count(), n, L);
    rep.lines.push_back({"bias L=" + std::to_string(L), worst, bound, worst <= bound});
  }

  // Continuous greedy certificate.
  const unsigned L = std::max(3U, obj.min_supported_order());
  const PolyEstimator pe(build_poly_estimator(obj, L), L);
  const GreedyConfig gc{0.1, 1, false};
  const auto res = continuous_greedy(
      inst.matroid, gc, [&](std::span<const double> y, std::size_t) { return pe.gradient(y); },
      [&](std::span<const double> y) { return pe.value(y); });
  const auto cert = approximation_certificate(obj, inst.matroid, res.y, L, gc.iterations(), std::nullopt, cfg.guard);
  rep.lines.push_back({"greedy certificate L=" + std::to_string(L) + " K=" + std::to_string(gc.iterations()),
                       cert.lhs, cert.rhs, cert.holds()});

  // Pipage rounding.
  const auto est_poly = build_poly_estimator(obj, L);
  const auto pr = pipage_round(est_poly, inst.matroid, res.y);
  double worst_drop = 0.0;
  for (std::size_t i = 1; i < pr.estimator_values.size(); ++i) {
    worst_drop = std::max(worst_drop, pr.estimator_values[i - 1] - pr.estimator_values[i]);
  }
  rep.lines.push_back({"pipage estimator non-decrease", worst_drop, 1e-12, worst_drop <= 1e-12});
  rep.lines.push_back({"pipage rounds <= N", static_cast<double>(pr.rounds), static_cast<double>(n), pr.rounds <= n});
  const auto pc = pipage_certificate(obj, inst.matroid, res.y, pr.x, L, cfg.guard);
  rep.lines.push_back({"pipage certificate", pc.lhs, pc.rhs, pc.holds()});

  // Sampler unbiasedness: Hoeffding on each coordinate, union over N.
  {
    double fmin = std::numeric_limits<double>::infinity(), fmax = -fmin;
    std::vector<std::uint8_t> x(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1U;
      const double v = exact_value(obj, BinaryVector(x.begin(), x.end()));
      fmin = std::min(fmin, v);
      fmax = std::max(fmax, v);
    }
    const double range = 2.0 * (fmax - fmin);
    const double delta = 1e-6;
    const auto& y = points.front();
    const auto exact = grad_exact(obj, y, cfg.guard);
    const auto samp = grad_sample(obj, y, SampleConfig{cfg.sampler_samples, derive_seed(cfg.seed, 7)});
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(exact.values[i] - samp.values[i]));
    const double tol = range * std::sqrt(std::log(2.0 * static_cast<double>(n) / delta) /
                                         (2.0 * static_cast<double>(cfg.sampler_samples)));
    rep.lines.push_back({"sampler unbiased T=" + std::to_string(cfg.sampler_samples), worst, tol, worst <= tol});
  }
  return rep;
}

}  // namespace polysub
