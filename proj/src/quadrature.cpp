#include "tailidx/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tailidx/error.hpp"

namespace tailidx {

namespace {

// 20-point Gauss-Legendre on [-1, 1]; symmetric, positive abscissae listed.
constexpr std::array<double, 10> kNodes = {
    0.0765265211334973337546404, 0.2277858511416450780804962, 0.3737060887154195606725482,
    0.5108670019508270980043641, 0.6360536807265150254528367, 0.7463319064601507926143051,
    0.8391169718222188233945291, 0.9122344282513259058677524, 0.9639719272779137912676661,
    0.9931285991850949247861224};
constexpr std::array<double, 10> kWeights = {
    0.1527533871307258506980843, 0.1491729864726037467878287, 0.1420961093183820513292983,
    0.1316886384491766268984945, 0.1181945319615184173123774, 0.1019301198172404350367501,
    0.0832767415767047487247581, 0.0626720483341090635695065, 0.0406014298003869413310400,
    0.0176140071391521183118620};

// Closest approach to u = 1 that double resolves comfortably.
constexpr std::size_t kRightDepthCap = 48;

struct Sums {
  double value = 0.0;
  double abs_value = 0.0;
};

void panel(const std::function<double(double)>& f, double a, double b, Sums& s) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  double acc_abs = 0.0;
  for (std::size_t i = 0; i < kNodes.size(); ++i) {
    const double d = half * kNodes[i];
    const double fl = f(mid - d);
    const double fr = f(mid + d);
    if (!std::isfinite(fl) || !std::isfinite(fr)) {
      throw QuadratureError("integrand is not finite near u = " + std::to_string(std::isfinite(fl) ? mid + d : mid - d));
    }
    acc += kWeights[i] * (fl + fr);
    acc_abs += kWeights[i] * (std::abs(fl) + std::abs(fr));
  }
  s.value += half * acc;
  s.abs_value += half * acc_abs;
}

// Each dyadic panel is split in two so the nodes are never sparse relative to the scale.
void dyadic(const std::function<double(double)>& f, double a, double b, Sums& s) {
  const double m = 0.5 * (a + b);
  panel(f, a, m, s);
  panel(f, m, b, s);
}

// Adds the panels of grading levels (from, to] on both sides.
void extend(const std::function<double(double)>& f, std::size_t from, std::size_t to, Sums& s) {
  for (std::size_t i = from + 1; i <= to; ++i) {
    dyadic(f, std::ldexp(1.0, -static_cast<int>(i) - 1), std::ldexp(1.0, -static_cast<int>(i)), s);
  }
  for (std::size_t i = from + 1; i <= std::min(to, kRightDepthCap); ++i) {
    dyadic(f, 1.0 - std::ldexp(1.0, -static_cast<int>(i)), 1.0 - std::ldexp(1.0, -static_cast<int>(i) - 1), s);
  }
}

}  // namespace

QuadratureResult integrate_unit_interval(const std::function<double(double)>& f, const QuadratureOptions& opt) {
  std::size_t depth = std::max<std::size_t>(opt.initial_depth, 1);
  Sums s;
  extend(f, 0, depth, s);
  double rel_change = 0.0;
  for (;;) {
    const std::size_t next = 2 * depth;
    if (next > opt.max_depth) {
      throw QuadratureError("integral did not converge by grading depth " + std::to_string(depth) +
                            " (last relative change " + std::to_string(rel_change) + "); it may not exist");
    }
    const double before = s.value;
    extend(f, depth, next, s);
    const double change = std::abs(s.value - before);
    if (change <= opt.tol * s.abs_value) return QuadratureResult{s.value, s.abs_value, next, change};
    rel_change = s.abs_value > 0.0 ? change / s.abs_value : change;
    depth = next;
  }
}

}  // namespace tailidx
