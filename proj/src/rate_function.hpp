#pragma once

namespace epirate {

// Any time-varying infection-rate model: non-negative on its support, with a
// left limit at every interior point and a closed-form definite integral over
// the whole support.
class RateFunction {
 public:
  virtual ~RateFunction() = default;

  virtual double value(double t) const = 0;       // t in [begin, end]
  virtual double left_limit(double t) const = 0;  // t in (begin, end]
  virtual double integral() const = 0;            // over [begin, end]
  virtual double support_begin() const = 0;
  virtual double support_end() const = 0;
};

}  // namespace epirate
