#include "polysub/analytic.hpp"

#include <cmath>

#include "polysub/error.hpp"

namespace polysub {

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Log1p:
      return "log1p";
    case KernelKind::QueueDelay:
      return "queue";
    case KernelKind::Identity:
      return "identity";
  }
  return "unknown";
}

AnalyticKernel AnalyticKernel::log1p() { return AnalyticKernel(KernelKind::Log1p, 0.0, 1.0, 0.5); }

AnalyticKernel AnalyticKernel::queue_delay(double s_bar) {
  if (!(s_bar >= 0.0)) throw InputError("queue kernel requires s_bar >= 0, got " + std::to_string(s_bar));
  if (s_bar >= 1.0) {
    throw StabilityError("queue kernel requires s_bar < 1, got " + std::to_string(s_bar));
  }
  return AnalyticKernel(KernelKind::QueueDelay, 0.0, s_bar, 0.0);
}

AnalyticKernel AnalyticKernel::identity() { return AnalyticKernel(KernelKind::Identity, 0.0, 1.0, 0.0); }

double eval_kernel(const AnalyticKernel& k, double s) {
  if (k.kind() == KernelKind::QueueDelay && s >= 1.0) {
    throw StabilityError("queue load " + std::to_string(s) + " >= 1");
  }
  if (!(s >= k.domain_lo() - kKernelDomainSlack && s <= k.domain_hi() + kKernelDomainSlack)) {
    throw DomainError(to_string(k.kind()) + " kernel evaluated at " + std::to_string(s) +
                      " outside [" + std::to_string(k.domain_lo()) + ", " +
                      std::to_string(k.domain_hi()) + "]");
  }
  switch (k.kind()) {
    case KernelKind::Log1p:
      return std::log1p(s);
    case KernelKind::QueueDelay:
      return s / (1.0 - s);
    case KernelKind::Identity:
      return s;
  }
  return 0.0;
}

TaylorPolynomial taylor(const AnalyticKernel& k, unsigned order) {
  TaylorPolynomial tp;
  tp.center = k.center();
  switch (k.kind()) {
    case KernelKind::Log1p: {
      // h^(l)(c) / l! = (-1)^(l+1) / (l (1 + c)^l)
      const double inv = 1.0 / (1.0 + k.center());
      tp.coefficients.resize(order + 1);
      tp.coefficients[0] = std::log1p(k.center());
      double p = 1.0;
      for (unsigned l = 1; l <= order; ++l) {
        p *= inv;
        tp.coefficients[l] = (l % 2 == 1 ? p : -p) / l;
      }
      break;
    }
    case KernelKind::QueueDelay:
      if (order < 1) throw InputError("queue kernel expansion needs order >= 1");
      // Around 0: s/(1-s) = s + s^2 + ...
      tp.coefficients.assign(order + 1, 1.0);
      tp.coefficients[0] = 0.0;
      break;
    case KernelKind::Identity:
      tp.coefficients = {k.center(), 1.0};
      break;
  }
  return tp;
}

double eval_taylor(const TaylorPolynomial& tp, double s) {
  const double u = s - tp.center;
  double acc = 0.0;
  for (auto it = tp.coefficients.rbegin(); it != tp.coefficients.rend(); ++it) acc = acc * u + *it;
  return acc;
}

double residual_bound(const AnalyticKernel& k, unsigned order, std::optional<double> s_bar) {
  switch (k.kind()) {
    case KernelKind::Log1p:
      // Lagrange remainder with |s - 1/2| <= 1/2 and 1 + s' >= 1.
      return 1.0 / ((order + 1.0) * std::ldexp(1.0, static_cast<int>(order) + 1));
    case KernelKind::QueueDelay: {
      const double sb = s_bar.value_or(k.s_bar());
      if (!(sb >= 0.0 && sb < 1.0)) throw InputError("s_bar must lie in [0, 1)");
      return std::pow(sb, order + 1.0) / (1.0 - sb);
    }
    case KernelKind::Identity:
      return 0.0;
  }
  return 0.0;
}

double residual_bound(KernelKind kind, unsigned order, std::optional<double> s_bar) {
  switch (kind) {
    case KernelKind::Log1p:
      return residual_bound(AnalyticKernel::log1p(), order);
    case KernelKind::QueueDelay:
      if (!s_bar) throw InputError("queue kernel residual needs s_bar");
      if (!(*s_bar >= 0.0 && *s_bar < 1.0)) throw InputError("s_bar must lie in [0, 1)");
      return residual_bound(AnalyticKernel::queue_delay(*s_bar), order, s_bar);
    case KernelKind::Identity:
      return 0.0;
  }
  return 0.0;
}

}  // namespace polysub
