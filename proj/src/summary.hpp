#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "posterior_sample.hpp"
#include "rate_function.hpp"
#include "removal_data.hpp"
#include "simulator.hpp"

namespace epirate {

struct GridSummary {
  std::vector<double> t;
  std::vector<double> q05, q50, q95;
  std::size_t samples = 0;
};

// Rate evaluator for one posterior sample; 0 outside the sample's support.
// Mass-action samples need the removal data to rebuild their trajectory.
class SampleCurve {
 public:
  SampleCurve(const PosteriorSample& sample, const RemovalData* data);

  double rate_at(double t) const;
  double per_infective_at(double t) const;  // h(t) / Y_t from this sample's latents
  double begin() const { return begin_; }
  double end() const { return end_; }

 private:
  double infectives_at(double t) const;

  const PosteriorSample* sample_;
  const RemovalData* data_;
  std::shared_ptr<const RateFunction> rate_;  // step/spline
  std::vector<double> sorted_inf_;            // mass-action and per-infective
  double begin_ = 0.0, end_ = 0.0;
  double ma_beta_ = 0.0;
  long ma_population_ = 0;
  bool mass_action_ = false;
};

// default grid: `points` equally spaced times on [min I_omega, R_n]
std::vector<double> default_grid(std::span<const PosteriorSample> samples,
                                 const RemovalData* data, int points);

// pointwise 5/50/95 empirical quantiles of the rate (or rate per infective)
// across samples
GridSummary summarize_samples(std::span<const PosteriorSample> samples,
                              std::span<const double> grid, const RemovalData* data,
                              bool per_infective);

// fraction of grid points where [q05, q95] covers the true rate; the optional
// window restricts to t in [lo, hi]
double band_coverage(const GridSummary& s, const EpidemicTruth& truth, double lo,
                     double hi);

}  // namespace epirate
