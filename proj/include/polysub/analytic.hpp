#pragma once

#include <optional>
#include <string>
#include <vector>

namespace polysub {

enum class KernelKind { Log1p, QueueDelay, Identity };

std::string to_string(KernelKind kind);

// Outer function h applied to an inner multilinear function.
//   Log1p      h(s) = log(1 + s)  on [0, 1],      expanded around 1/2
//   QueueDelay h(s) = s / (1 - s) on [0, s_bar],  expanded around 0, s_bar < 1
//   Identity   h(s) = s           on [0, 1]
class AnalyticKernel {
 public:
  static AnalyticKernel log1p();
  static AnalyticKernel queue_delay(double s_bar);
  static AnalyticKernel identity();

  KernelKind kind() const noexcept { return kind_; }
  double domain_lo() const noexcept { return lo_; }
  double domain_hi() const noexcept { return hi_; }
  double center() const noexcept { return center_; }
  // Only meaningful for QueueDelay.
  double s_bar() const noexcept { return hi_; }

  friend bool operator==(const AnalyticKernel&, const AnalyticKernel&) = default;

 private:
  AnalyticKernel(KernelKind kind, double lo, double hi, double center)
      : kind_(kind), lo_(lo), hi_(hi), center_(center) {}

  KernelKind kind_ = KernelKind::Identity;
  double lo_ = 0.0;
  double hi_ = 1.0;
  double center_ = 0.0;
};

// sum_l coefficients[l] * (s - center)^l
struct TaylorPolynomial {
  double center = 0.0;
  std::vector<double> coefficients;

  std::size_t order() const noexcept { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

// Tolerance used when checking s against the kernel domain.
inline constexpr double kKernelDomainSlack = 1e-9;

double eval_kernel(const AnalyticKernel& k, double s);
TaylorPolynomial taylor(const AnalyticKernel& k, unsigned order);
double eval_taylor(const TaylorPolynomial& tp, double s);

// Uniform bound on |h - h_L| over the kernel domain. For QueueDelay, s_bar
// defaults to the kernel's own s_bar when not given.
double residual_bound(const AnalyticKernel& k, unsigned order, std::optional<double> s_bar = std::nullopt);
// Same bound by kind; QueueDelay requires s_bar.
double residual_bound(KernelKind kind, unsigned order, std::optional<double> s_bar = std::nullopt);

}  // namespace polysub
