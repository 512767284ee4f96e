#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "cutcap/errors.hpp"

namespace cutcap {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::uint64_t evaluations = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr double kGk15Nodes[8] = {
    0.000000000000000000000000000000000e+00,
    2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01,
    5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01,
    8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01,
    9.914553711208126392068546975263285e-01};

inline constexpr double kKronrodWeights[8] = {
    2.094821410847278280129991748917143e-01,
    2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01,
    1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01,
    1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02,
    2.293532201052922496373200805896959e-02};

inline constexpr double kGaussWeights[4] = {
    4.179591836734693877551020408163265e-01,
    3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01,
    1.294849661688696932706114326790820e-01};

template <class F>
inline void gk15(F&& f, double a, double b, double& value, double& error) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double f0 = f(mid);
  double res_k = kKronrodWeights[0] * f0;
  double res_g = kGaussWeights[0] * f0;
  for (int j = 1; j < 8; ++j) {
    const double dx = half * kGk15Nodes[j];
    const double fs = f(mid - dx) + f(mid + dx);
    res_k += kKronrodWeights[j] * fs;
    if (j % 2 == 0) res_g += kGaussWeights[j / 2] * fs;
  }
  value = res_k * half;
  // Conservative estimate: |Kronrod - Gauss|, floored at the rounding level.
  error = std::max(std::fabs((res_k - res_g) * half),
                   50.0 * 2.2e-16 * std::fabs(value));
}

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration. Stops when the summed error
// estimate satisfies err <= max(abs_tol, rel_tol * |integral|). With
// require_abs = true only the absolute target counts (rel_tol still guides
// subdivision but cannot declare convergence).
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                              double rel_tol, bool require_abs = false,
                              std::uint64_t max_evals = 4000000) {
  if (!(b > a)) throw validation_error("integration interval must have b > a");
  QuadResult out;
  std::priority_queue<detail::Panel> heap;
  double total = 0.0, err = 0.0;

  auto push = [&](double lo, double hi) {
    detail::Panel p{lo, hi, 0.0, 0.0};
    detail::gk15(f, lo, hi, p.value, p.error);
    out.evaluations += 15;
    total += p.value;
    err += p.error;
    heap.push(p);
  };

  // Pre-split wide ranges at decade boundaries so multi-scale integrands
  // start from sensible panels.
  if (a > 0.0 && b / a > 10.0) {
    double lo = a;
    while (lo * 10.0 < b) {
      push(lo, lo * 10.0);
      lo *= 10.0;
    }
    push(lo, b);
  } else {
    push(a, b);
  }

  auto converged = [&]() {
    const double rel_target = rel_tol * std::fabs(total);
    return require_abs ? err <= abs_tol : err <= std::max(abs_tol, rel_target);
  };

  while (!converged() && out.evaluations + 30 <= max_evals) {
    detail::Panel worst = heap.top();
    if (worst.error == 0.0) break;
    heap.pop();
    total -= worst.value;
    err -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval exhausted by rounding
      total += worst.value;
      err += worst.error;
      break;
    }
    push(worst.a, mid);
    push(mid, worst.b);
  }

  out.value = total;
  out.error_estimate = err;
  out.converged = converged();
  return out;
}

}  // namespace cutcap
