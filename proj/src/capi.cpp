#include "epirate.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "posterior_io.hpp"
#include "summary.hpp"
#include "validate_prior.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

epirate_status to_status(const std::exception& e) {
  set_error(e.what());
  if (dynamic_cast<const epirate::ConfigError*>(&e)) return EPIRATE_ERR_ARGUMENT;
  if (dynamic_cast<const epirate::DataError*>(&e)) return EPIRATE_ERR_DATA;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return EPIRATE_ERR_ARGUMENT;
  return EPIRATE_ERR_RUNTIME;
}

template <class Fn>
epirate_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return to_status(e);
  } catch (...) {
    set_error("unknown error");
    return EPIRATE_ERR_RUNTIME;
  }
}

}  // namespace

struct epirate_dataset {
  epirate::RemovalData data;
};

struct epirate_sampler {
  epirate::RemovalData data;
  epirate::FitConfig config;
  std::unique_ptr<epirate::SamplerRunner> runner;
  bool used = false;
};

extern "C" {

const char* epirate_version(void) { return "0.1.0"; }

const char* epirate_last_error(void) { return g_last_error.c_str(); }

epirate_status epirate_dataset_load_csv(const char* path, epirate_dataset** out) {
  return guarded([&]() -> epirate_status {
    if (!path || !out) {
      set_error("null argument");
      return EPIRATE_ERR_ARGUMENT;
    }
    auto* d = new epirate_dataset;
    try {
      d->data = epirate::RemovalData::load_csv(path);
    } catch (const std::exception& e) {
      delete d;
      set_error(e.what());
      return EPIRATE_ERR_DATA;
    }
    *out = d;
    return EPIRATE_OK;
  });
}

epirate_status epirate_dataset_create(const double* removal_times, size_t n,
                                      epirate_dataset** out) {
  return guarded([&]() -> epirate_status {
    if (!removal_times || !out || n == 0) {
      set_error("need at least one removal time");
      return EPIRATE_ERR_ARGUMENT;
    }
    auto* d = new epirate_dataset;
    d->data = epirate::RemovalData::from_times(
        std::vector<double>(removal_times, removal_times + n));
    *out = d;
    return EPIRATE_OK;
  });
}

size_t epirate_dataset_size(const epirate_dataset* d) { return d ? d->data.times().size() : 0; }

size_t epirate_dataset_times(const epirate_dataset* d, double* out, size_t cap) {
  if (!d || !out) return 0;
  const auto& t = d->data.times();
  const size_t m = cap < t.size() ? cap : t.size();
  std::memcpy(out, t.data(), m * sizeof(double));
  return m;
}

void epirate_dataset_free(epirate_dataset* d) { delete d; }

epirate_status epirate_simulate(const char* config_json, const char* removals_csv_path,
                                const char* truth_json_path, long* final_size_out) {
  return guarded([&]() -> epirate_status {
    if (!config_json) {
      set_error("null config");
      return EPIRATE_ERR_ARGUMENT;
    }
    const epirate::SimConfig cfg = epirate::parse_sim_config_string(config_json);
    epirate::Rng rng(cfg.seed);
    const epirate::SimResult res = epirate::simulate_epidemic(cfg, rng);
    if (removals_csv_path) epirate::write_removals_csv(removals_csv_path, res.removals);
    if (truth_json_path) epirate::write_truth_json(truth_json_path, res);
    if (final_size_out) *final_size_out = res.final_size();
    return EPIRATE_OK;
  });
}

epirate_status epirate_sampler_create(const epirate_dataset* data, const char* config_json,
                                      epirate_sampler** out) {
  return guarded([&]() -> epirate_status {
    if (!data || !config_json || !out) {
      set_error("null argument");
      return EPIRATE_ERR_ARGUMENT;
    }
    auto s = std::make_unique<epirate_sampler>();
    s->data = data->data;
    s->config = epirate::parse_fit_config_string(config_json);
    s->runner = epirate::make_sampler(s->data, s->config);
    *out = s.release();
    return EPIRATE_OK;
  });
}

epirate_status epirate_sampler_run(epirate_sampler* s, epirate_sample_callback cb,
                                   void* user) {
  return guarded([&]() -> epirate_status {
    if (!s) {
      set_error("null sampler");
      return EPIRATE_ERR_ARGUMENT;
    }
    if (s->used) {
      set_error("sampler already run; create a new one");
      return EPIRATE_ERR_RUNTIME;
    }
    s->used = true;
    s->runner->run([&](const epirate::PosteriorSample& sample) {
      if (!cb) return true;
      const std::string line = epirate::sample_to_json(sample).dump();
      return cb(line.c_str(), user) == 0;
    });
    return EPIRATE_OK;
  });
}

epirate_status epirate_sampler_run_to_file(epirate_sampler* s, const char* jsonl_path) {
  return guarded([&]() -> epirate_status {
    if (!s || !jsonl_path) {
      set_error("null argument");
      return EPIRATE_ERR_ARGUMENT;
    }
    if (s->used) {
      set_error("sampler already run; create a new one");
      return EPIRATE_ERR_RUNTIME;
    }
    std::ofstream out(jsonl_path);
    if (!out) {
      set_error(std::string("cannot write ") + jsonl_path);
      return EPIRATE_ERR_DATA;
    }
    s->used = true;
    s->runner->run([&](const epirate::PosteriorSample& sample) {
      epirate::write_jsonl_line(out, sample);
      return static_cast<bool>(out);
    });
    if (!out) {
      set_error(std::string("write failed: ") + jsonl_path);
      return EPIRATE_ERR_DATA;
    }
    return EPIRATE_OK;
  });
}

void epirate_sampler_free(epirate_sampler* s) { delete s; }

epirate_status epirate_summarize(const char* posterior_jsonl_path, const char* options_json,
                                 const char* removals_csv_path, const char* truth_json_path,
                                 const char* band_csv_path) {
  return guarded([&]() -> epirate_status {
    if (!posterior_jsonl_path || !band_csv_path) {
      set_error("null path");
      return EPIRATE_ERR_ARGUMENT;
    }
    const epirate::SummarizeOptions opt =
        epirate::parse_summarize_options_string(options_json ? options_json : "{}");
    const auto samples =
        epirate::read_jsonl(posterior_jsonl_path, opt.burn_in_samples, opt.thin);
    if (samples.empty()) {
      set_error("posterior stream has no samples after burn-in/thinning");
      return EPIRATE_ERR_DATA;
    }
    epirate::RemovalData data;
    const epirate::RemovalData* data_ptr = nullptr;
    if (removals_csv_path) {
      data = epirate::RemovalData::load_csv(removals_csv_path);
      data_ptr = &data;
    }
    const auto grid = epirate::default_grid(samples, data_ptr, opt.grid_points);
    const auto summary =
        epirate::summarize_samples(samples, grid, data_ptr, opt.per_infective);
    if (truth_json_path) {
      const epirate::EpidemicTruth truth = epirate::load_truth(truth_json_path);
      epirate::write_band_csv(band_csv_path, summary, &truth);
    } else {
      epirate::write_band_csv(band_csv_path, summary, nullptr);
    }
    return EPIRATE_OK;
  });
}

epirate_status epirate_validate_prior(const char* config_json, char** report_json_out) {
  return guarded([&]() -> epirate_status {
    const epirate::PriorValidationConfig cfg =
        epirate::parse_prior_validation_config(config_json ? config_json : "{}");
    const epirate::PriorValidationReport rep = epirate::validate_prior(cfg);
    if (report_json_out) {
      const std::string text = rep.to_json().dump();
      char* buf = static_cast<char*>(std::malloc(text.size() + 1));
      if (!buf) {
        set_error("out of memory");
        return EPIRATE_ERR_RUNTIME;
      }
      std::memcpy(buf, text.c_str(), text.size() + 1);
      *report_json_out = buf;
    }
    return rep.pass ? EPIRATE_OK : EPIRATE_ERR_VALIDATION;
  });
}

void epirate_string_free(char* s) { std::free(s); }

}  // extern "C"
