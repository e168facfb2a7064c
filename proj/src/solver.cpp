#include "tailidx/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "tailidx/error.hpp"

namespace tailidx {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt 5 - 1) / 2

double sanitize(double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : v; }

struct Candidate {
  double x;
  double value;
  bool converged;
  std::vector<double> path;
  double a = 0.0, b = 0.0;  // final bracket
};

bool better(double xa, double fa, double xb, double fb) {
  if (fa != fb) return fa < fb;
  return std::abs(xa) < std::abs(xb);
}

// Golden section on [a, b], seeded with an incumbent (x0, f0) from the grid.
Candidate golden(const ObjectiveFn& f, double a, double b, double x0, double f0, const MinimizeOptions& opt) {
  Candidate best{x0, f0, false, {f0}};
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = sanitize(f(c, nullptr));
  double fd = sanitize(f(d, nullptr));
  for (std::size_t it = 0; it < opt.max_iter; ++it) {
    if (fc <= fd) {
      if (better(c, fc, best.x, best.value)) best.x = c, best.value = fc;
    } else if (better(d, fd, best.x, best.value)) {
      best.x = d, best.value = fd;
    }
    best.path.push_back(best.value);
    if (b - a <= opt.tol) {
      best.converged = true;
      best.a = a, best.b = b;
      return best;
    }
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = sanitize(f(c, nullptr));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = sanitize(f(d, nullptr));
    }
  }
  best.converged = b - a <= opt.tol;
  best.a = a, best.b = b;
  return best;
}

// Golden section on the objective cannot resolve the minimiser much below
// sqrt(machine epsilon): there the comparisons are decided by rounding noise. The
// score (a positive multiple of the derivative) carries no such cancellation, so
// its root is bracketed around the golden-section result, widening up to one grid
// cell, and located to full precision. This also makes the estimate reproducible
// under rounding-level perturbations of the data.
void polish(const ObjectiveFn& f, const MinimizeOptions& opt, Candidate& c) {
  auto score = [&f](double x) {
    double s = 0.0;
    f(x, &s);
    return s;
  };
  const double s0 = score(c.x);
  if (s0 == 0.0) return;
  const double cell = (opt.hi - opt.lo) / static_cast<double>(opt.grid_points - 1);
  for (double delta = opt.tol; delta <= cell; delta *= 4.0) {
    const double a = std::max(opt.lo, c.x - delta);
    const double b = std::min(opt.hi, c.x + delta);
    const double sa = score(a), sb = score(b);
    if (!std::isfinite(sa) || !std::isfinite(sb)) return;
    if (!(sa < 0.0 && sb > 0.0)) continue;
    std::uintmax_t iters = 100;
    const auto [l, r] = boost::math::tools::toms748_solve(score, a, b, sa, sb,
                                                          boost::math::tools::eps_tolerance<double>(52), iters);
    const double x = 0.5 * (l + r);
    double sx = 0.0;
    const double fx = sanitize(f(x, &sx));
    if (!std::isfinite(fx)) return;
    // Bitwise-identical objective and score means both points lie on the same flat
    // stretch (the small-gamma branch); the usual tie rule then prefers small |x|.
    if (fx == c.value && sx == s0 && std::abs(c.x) <= std::abs(x)) return;
    c.x = x;
    c.value = fx;
    if (c.path.empty() || fx <= c.path.back()) c.path.push_back(fx);
    return;
  }
}

}  // namespace

MinimizeResult grid_golden_minimize(const ObjectiveFn& f, const MinimizeOptions& opt, bool count_score_roots) {
  if (!(opt.lo < opt.hi) || opt.grid_points < 3 || !(opt.tol > 0.0)) {
    throw DomainError("invalid search interval, grid size or tolerance");
  }
  const std::size_t n = opt.grid_points;
  std::vector<double> xs(n), fs(n), scores(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    // Endpoint-exact spacing so a symmetric interval hits 0 exactly.
    xs[i] = i + 1 == n ? opt.hi : opt.lo + (opt.hi - opt.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    fs[i] = sanitize(f(xs[i], count_score_roots ? &scores[i] : nullptr));
  }

  MinimizeResult out;
  if (count_score_roots) {
    double prev = 0.0;  // last non-zero finite score
    for (std::size_t i = 0; i < n; ++i) {
      const double s = scores[i];
      if (!std::isfinite(s)) continue;
      if (s == 0.0) {
        ++out.sign_changes;
        prev = 0.0;
      } else {
        if (prev != 0.0 && (s > 0.0) != (prev > 0.0)) ++out.sign_changes;
        prev = s;
      }
    }
  }

  bool have = false;
  Candidate winner{xs[0], fs[0], false, {}};
  std::size_t winner_grid = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || fs[i] <= fs[i - 1];
    const bool right_ok = i + 1 == n || fs[i] <= fs[i + 1];
    if (!left_ok || !right_ok || !std::isfinite(fs[i])) continue;
    const double a = i == 0 ? xs[0] : xs[i - 1];
    const double b = i + 1 == n ? xs[n - 1] : xs[i + 1];
    Candidate c = golden(f, a, b, xs[i], fs[i], opt);
    if (count_score_roots && c.converged) polish(f, opt, c);
    if (!have || better(c.x, c.value, winner.x, winner.value)) {
      winner = std::move(c);
      winner_grid = i;
      have = true;
    }
  }

  if (!have) {
    // Objective non-finite everywhere on the grid.
    out.x = xs[n / 2];
    out.value = fs[n / 2];
    out.converged = false;
    return out;
  }
  out.converged = winner.converged;
  out.path = std::move(winner.path);
  if (winner.converged) {
    out.x = winner.x;
    out.value = winner.value;
  } else {
    out.x = xs[winner_grid];
    out.value = fs[winner_grid];
  }
  return out;
}

}  // namespace tailidx
