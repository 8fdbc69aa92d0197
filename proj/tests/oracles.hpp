// Test-side reference implementations, kept independent of the library code
// paths they check.
#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <vector>

namespace oracles {

// adaptive Simpson quadrature
inline double simpson(const std::function<double(double)>& f, double a, double m, double b,
                      double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double fa, double fm, double fb, double whole,
                                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, lm, m, fa, flm, fm);
  const double right = simpson(f, m, rm, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// integrates piecewise-smooth f by splitting at the supplied break points
inline double quadrature(const std::function<double(double)>& f, double a, double b,
                         const std::vector<double>& breaks = {}, double tol = 1e-12) {
  std::vector<double> pts = {a, b};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i], hi = pts[i + 1];
    if (!(hi > lo)) continue;
    const double m = 0.5 * (lo + hi);
    const double flo = f(lo), fm = f(m), fhi = f(hi);
    total += adaptive_simpson_rec(f, lo, hi, flo, fm, fhi,
                                  simpson(f, lo, m, hi, flo, fm, fhi), tol, 48);
  }
  return total;
}

// exact final-size pmf of the Markov SIR epidemic started by one infective in
// a population of `susceptibles`, from the embedded jump chain
inline std::vector<double> exact_final_size_pmf(int susceptibles, double beta,
                                                double gamma) {
  // p[(x,y)] = probability of visiting that state
  std::map<std::pair<int, int>, double> p;
  std::vector<double> pmf(static_cast<std::size_t>(susceptibles) + 2, 0.0);
  p[{susceptibles, 1}] = 1.0;
  // process states in an order where (x,y) only feeds (x-1,y+1) and (x,y-1)
  for (int x = susceptibles; x >= 0; --x) {
    for (int y = susceptibles + 1; y >= 1; --y) {
      const auto it = p.find({x, y});
      if (it == p.end() || it->second == 0.0) continue;
      const double mass = it->second;
      const double inf_rate = beta * x;  // the common factor y cancels
      const double pr_inf = x > 0 ? inf_rate / (inf_rate + gamma) : 0.0;
      if (x > 0) p[{x - 1, y + 1}] += mass * pr_inf;
      if (y == 1) {
        // removal ends the epidemic; ever-infected = 1 + susceptibles - x
        pmf[static_cast<std::size_t>(1 + susceptibles - x)] += mass * (1.0 - pr_inf);
      } else {
        p[{x, y - 1}] += mass * (1.0 - pr_inf);
      }
    }
  }
  return pmf;  // index = final size, entries 0 and 1.. filled
}

// independent empirical-quantile implementation (inclusive interpolation),
// written against the textbook h = p(n-1)+1 form on 1-based ranks
inline double quantile_ref(std::vector<double> x, double p) {
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  if (p <= 0.0) return x.front();
  if (p >= 1.0) return x.back();
  const double h = p * (static_cast<double>(n) - 1.0) + 1.0;  // 1-based rank
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo >= n) return x.back();
  return x[lo - 1] + frac * (x[lo] - x[lo - 1]);
}

inline double log_gamma_pdf_ref(double x, double shape, double rate) {
  if (rate == 0.0) return (shape - 1.0) * std::log(x);
  return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) -
         rate * x;
}

}  // namespace oracles
