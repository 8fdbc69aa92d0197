#include "summary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bspline_rate.hpp"
#include "stats.hpp"
#include "step_rate.hpp"

namespace epirate {

SampleCurve::SampleCurve(const PosteriorSample& sample, const RemovalData* data)
    : sample_(&sample), data_(data) {
  if (const auto* st = std::get_if<StepRateSample>(&sample.rate)) {
    rate_ = std::make_shared<StepRate>(st->begin, st->end, st->changepoints, st->heights);
    begin_ = st->begin;
    end_ = st->end;
  } else if (const auto* sp = std::get_if<SplineRateSample>(&sample.rate)) {
    rate_ = std::make_shared<SplineRate>(sp->begin, sp->end, sp->interior_knots, sp->coeffs);
    begin_ = sp->begin;
    end_ = sp->end;
  } else {
    const auto& ma = std::get<MassActionRateSample>(sample.rate);
    if (!data) throw std::invalid_argument("summary: mass-action samples need the removal data");
    if (sample.infection.empty())
      throw std::invalid_argument("summary: mass-action samples need latent infection times");
    mass_action_ = true;
    ma_beta_ = ma.beta;
    ma_population_ = ma.population;
    begin_ = sample.first_infection;
    end_ = data->last();
  }
  if (mass_action_ || !sample.infection.empty()) {
    sorted_inf_ = sample.infection;
    std::sort(sorted_inf_.begin(), sorted_inf_.end());
  }
}

double SampleCurve::infectives_at(double t) const {
  const auto ni = std::upper_bound(sorted_inf_.begin(), sorted_inf_.end(), t) -
                  sorted_inf_.begin();
  const auto& rem = data_->times();
  const auto nr = std::upper_bound(rem.begin(), rem.end(), t) - rem.begin();
  return static_cast<double>(ni - nr);
}

double SampleCurve::rate_at(double t) const {
  if (t < begin_ || t > end_) return 0.0;
  if (!mass_action_) return rate_->value(t);
  const auto ni = std::upper_bound(sorted_inf_.begin(), sorted_inf_.end(), t) -
                  sorted_inf_.begin();
  const double x = static_cast<double>(ma_population_) -
                   std::max<double>(0.0, static_cast<double>(ni) - 1.0);
  const double y = infectives_at(t);
  return y > 0.0 ? ma_beta_ * x * y : 0.0;
}

double SampleCurve::per_infective_at(double t) const {
  if (sorted_inf_.empty())
    throw std::invalid_argument("summary: per-infective rate needs latent infection times");
  if (!data_) throw std::invalid_argument("summary: per-infective rate needs the removal data");
  if (t < begin_ || t > end_) return 0.0;
  const double y = infectives_at(t);
  if (y <= 0.0) return 0.0;
  return rate_at(t) / y;
}

std::vector<double> default_grid(std::span<const PosteriorSample> samples,
                                 const RemovalData* data, int points) {
  if (samples.empty()) throw std::invalid_argument("summary: no samples");
  if (points < 2) throw std::invalid_argument("summary: need at least 2 grid points");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    lo = std::min(lo, s.first_infection);
    if (const auto* st = std::get_if<StepRateSample>(&s.rate)) {
      lo = std::min(lo, st->begin);
      hi = std::max(hi, st->end);
    } else if (const auto* sp = std::get_if<SplineRateSample>(&s.rate)) {
      lo = std::min(lo, sp->begin);
      hi = std::max(hi, sp->end);
    }
  }
  if (data) hi = std::max(hi, data->last());
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo))
    throw std::invalid_argument("summary: cannot infer a grid; supply the removal data");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

GridSummary summarize_samples(std::span<const PosteriorSample> samples,
                              std::span<const double> grid, const RemovalData* data,
                              bool per_infective) {
  if (samples.empty()) throw std::invalid_argument("summary: no samples");
  std::vector<SampleCurve> curves;
  curves.reserve(samples.size());
  for (const auto& s : samples) curves.emplace_back(s, data);

  GridSummary out;
  out.samples = samples.size();
  out.t.assign(grid.begin(), grid.end());
  out.q05.resize(grid.size());
  out.q50.resize(grid.size());
  out.q95.resize(grid.size());
  std::vector<double> col(samples.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t s = 0; s < curves.size(); ++s)
      col[s] = per_infective ? curves[s].per_infective_at(grid[g])
                             : curves[s].rate_at(grid[g]);
    std::sort(col.begin(), col.end());
    out.q05[g] = stats::quantile_sorted(col, 0.05);
    out.q50[g] = stats::quantile_sorted(col, 0.50);
    out.q95[g] = stats::quantile_sorted(col, 0.95);
  }
  return out;
}

double band_coverage(const GridSummary& s, const EpidemicTruth& truth, double lo,
                     double hi) {
  long total = 0, covered = 0;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    if (s.t[i] < lo || s.t[i] > hi) continue;
    ++total;
    const double h = truth.true_rate(s.t[i]);
    if (s.q05[i] <= h && h <= s.q95[i]) ++covered;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(covered) / static_cast<double>(total);
}

}  // namespace epirate
