#include "polysub/optimizer.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "polysub/error.hpp"
#include "polysub/simd/kernels.hpp"

namespace polysub {

namespace {

using Clock = std::chrono::steady_clock;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::size_t GreedyConfig::iterations() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InputError("step size must lie in (0, 1]");
  return static_cast<std::size_t>(std::ceil(1.0 / gamma - 1e-9));
}

void GreedyTrace::write_csv(std::ostream& out) const {
  out << "k,t,estimate,wall_seconds\n";
  for (const auto& r : rows) {
    out << r.k << ',' << format_double(r.t) << ',' << format_double(r.estimate) << ','
        << format_double(r.wall_seconds) << '\n';
  }
}

std::string GreedyTrace::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

GreedyTrace GreedyTrace::read_csv(std::istream& in) {
  GreedyTrace trace;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty trace", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "k,t,estimate,wall_seconds") throw ParseError("unexpected trace header `" + line + "`", line_no);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw ParseError("expected 4 columns", line_no);
    TraceRow row;
    auto parse = [&](const std::string& s, auto& v) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("bad number `" + s + "`", line_no);
    };
    parse(cells[0], row.k);
    parse(cells[1], row.t);
    parse(cells[2], row.estimate);
    parse(cells[3], row.wall_seconds);
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

GreedyResult continuous_greedy(const PartitionMatroid& mat, const GreedyConfig& cfg, const GradientFn& grad,
                               const ValueFn& value) {
  const std::size_t n = mat.ground_size();
  const std::size_t K = cfg.iterations();
  const std::size_t stride = std::max<std::size_t>(cfg.record_every, 1);
  const auto& kt = simd::kernels();

  GreedyResult res;
  res.y.assign(n, 0.0);
  std::vector<double> vertex(n);
  double t = 0.0;
  double elapsed = 0.0;

  auto record = [&](std::size_t k, double time, double estimate) {
    TraceRow row{k, time, estimate, elapsed, std::nullopt};
    if (cfg.keep_snapshots) row.y = res.y;
    res.trace.rows.push_back(std::move(row));
  };

  for (std::size_t k = 0; k < K; ++k) {
    const auto start = Clock::now();
    GradientEstimate est;
    try {
      est = grad(res.y, k);
    } catch (const std::exception& e) {
      throw IterationError(k, e.what());
    }
    if (est.values.size() != n) throw IterationError(k, "gradient has wrong length");
    const auto grad_done = Clock::now();
    res.gradient_seconds += std::chrono::duration<double>(grad_done - start).count();

    const BinaryVector m = mat.lp_maximize(est.values);
    const double step = k + 1 == K ? 1.0 - t : std::min(cfg.gamma, 1.0 - t);
    std::copy(m.begin(), m.end(), vertex.begin());

    elapsed += std::chrono::duration<double>(Clock::now() - start).count();

    // Trace the iterate the gradient was taken at; the trace value is not timed.
    if (k % stride == 0) record(k, t, est.value ? *est.value : value(res.y));

    const auto update_start = Clock::now();
    kt.axpy(step, vertex.data(), res.y.data(), n);
    res.steps.push_back(GreedyStep{step, m});
    t += step;
    elapsed += std::chrono::duration<double>(Clock::now() - update_start).count();
  }
  res.loop_seconds = elapsed;
  record(K, 1.0, value(res.y));
  return res;
}

ApproximationCertificate approximation_certificate(const CompositeObjective& obj, const PartitionMatroid& mat,
                                                   std::span<const double> y_final, unsigned order,
                                                   std::size_t iterations, std::optional<double> bias_override,
                                                   std::size_t max_ground) {
  if (obj.ground_size() > max_ground) {
    throw GuardError("certificate refused: N=" + std::to_string(obj.ground_size()) + " exceeds guard " +
                     std::to_string(max_ground));
  }
  if (iterations == 0) throw InputError("iteration count must be positive");
  ApproximationCertificate c;
  c.iterations = iterations;
  c.lhs = relaxation_exact(obj, y_final, max_ground);
  c.opt = -std::numeric_limits<double>::infinity();
  mat.for_each_base([&](const BinaryVector& b) { c.opt = std::max(c.opt, exact_value(obj, b)); });
  c.diameter = std::sqrt(static_cast<double>(mat.rank()));
  c.bias = bias_override ? *bias_override : bias_bound(obj, order);
  c.lipschitz = lipschitz_P(obj, mat);
  c.rhs = (1.0 - std::exp(-1.0)) * c.opt - c.diameter * c.bias -
          c.lipschitz / (2.0 * static_cast<double>(iterations));
  return c;
}

}  // namespace polysub
