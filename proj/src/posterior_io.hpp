#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "posterior_sample.hpp"
#include "summary.hpp"

namespace epirate {

nlohmann::json sample_to_json(const PosteriorSample& s);
PosteriorSample sample_from_json(const nlohmann::json& j);

// one compact JSON object per line
void write_jsonl_line(std::ostream& out, const PosteriorSample& s);

// read a posterior stream, optionally skipping the first `burn_in_samples`
// lines and then keeping every `thin`-th
std::vector<PosteriorSample> read_jsonl(const std::string& path, long burn_in_samples = 0,
                                        long thin = 1);

nlohmann::json truth_to_json(const EpidemicTruth& truth, long final_size);
EpidemicTruth truth_from_json(const nlohmann::json& j);
EpidemicTruth load_truth(const std::string& path);

void write_removals_csv(const std::string& path, const RemovalData& data);
void write_truth_json(const std::string& path, const SimResult& sim);

// t,q05,q50,q95 with optional truth/coverage columns
void write_band_csv(const std::string& path, const GridSummary& s,
                    const EpidemicTruth* truth);

}  // namespace epirate
