#include "posterior_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "errors.hpp"

namespace epirate {

using nlohmann::json;

json sample_to_json(const PosteriorSample& s) {
  json j;
  j["iter"] = s.iter;
  j["gamma"] = s.gamma;
  if (s.has_mu)
    j["mu"] = s.mu;
  else
    j["mu"] = nullptr;
  j["loglik"] = s.loglik;
  j["omega"] = s.omega;
  j["I_omega"] = s.first_infection;
  json r;
  if (const auto* st = std::get_if<StepRateSample>(&s.rate)) {
    r["type"] = "step";
    r["begin"] = st->begin;
    r["end"] = st->end;
    r["k"] = st->changepoints.size();
    r["s"] = st->changepoints;
    r["h"] = st->heights;
  } else if (const auto* sp = std::get_if<SplineRateSample>(&s.rate)) {
    r["type"] = "bspline";
    r["begin"] = sp->begin;
    r["end"] = sp->end;
    r["k"] = sp->interior_knots.size();
    r["t_interior"] = sp->interior_knots;
    r["P"] = sp->coeffs;
  } else {
    const auto& ma = std::get<MassActionRateSample>(s.rate);
    r["type"] = "mass_action";
    r["beta"] = ma.beta;
    r["population"] = ma.population;
  }
  j["rate"] = std::move(r);
  if (!s.infection.empty()) j["I"] = s.infection;
  return j;
}

PosteriorSample sample_from_json(const json& j) {
  PosteriorSample s;
  s.iter = j.value("iter", 0LL);
  s.gamma = j.value("gamma", 0.0);
  if (j.contains("mu") && !j["mu"].is_null()) {
    s.mu = j["mu"].get<double>();
    s.has_mu = true;
  } else {
    s.has_mu = false;
  }
  s.loglik = j.value("loglik", 0.0);
  s.omega = j.value("omega", 0);
  s.first_infection = j.value("I_omega", 0.0);
  if (j.contains("I")) s.infection = j["I"].get<std::vector<double>>();
  const json& r = j.at("rate");
  const std::string type = r.at("type").get<std::string>();
  if (type == "step") {
    StepRateSample st;
    st.begin = r.at("begin").get<double>();
    st.end = r.at("end").get<double>();
    st.changepoints = r.at("s").get<std::vector<double>>();
    st.heights = r.at("h").get<std::vector<double>>();
    s.rate = std::move(st);
  } else if (type == "bspline") {
    SplineRateSample sp;
    sp.begin = r.at("begin").get<double>();
    sp.end = r.at("end").get<double>();
    sp.interior_knots = r.at("t_interior").get<std::vector<double>>();
    sp.coeffs = r.at("P").get<std::vector<double>>();
    s.rate = std::move(sp);
  } else if (type == "mass_action") {
    MassActionRateSample ma;
    ma.beta = r.at("beta").get<double>();
    ma.population = r.value("population", 0L);
    s.rate = ma;
  } else {
    throw DataError("posterior stream: unknown rate type '" + type + "'");
  }
  return s;
}

void write_jsonl_line(std::ostream& out, const PosteriorSample& s) {
  out << sample_to_json(s).dump() << '\n';
}

std::vector<PosteriorSample> read_jsonl(const std::string& path, long burn_in_samples,
                                        long thin) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open posterior stream: " + path);
  if (thin < 1) thin = 1;
  std::vector<PosteriorSample> out;
  std::string line;
  long idx = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const long i = idx++;
    if (i < burn_in_samples || (i - burn_in_samples) % thin != 0) continue;
    try {
      out.push_back(sample_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw DataError("bad posterior line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

json truth_to_json(const EpidemicTruth& truth, long final_size) {
  json j;
  j["model"] = truth.seasonal ? "seasonal" : "mass_action";
  j["beta"] = truth.beta;
  j["gamma"] = truth.gamma;
  j["population"] = truth.population;
  j["final_size"] = final_size;
  j["omega"] = truth.omega;
  j["I_first"] = truth.first_infection;
  j["I"] = truth.infection;
  json ev = json::array();
  for (const auto& e : truth.events) ev.push_back({e[0], e[1], e[2]});
  j["events"] = std::move(ev);
  return j;
}

EpidemicTruth truth_from_json(const json& j) {
  EpidemicTruth t;
  t.seasonal = j.value("model", "mass_action") == "seasonal";
  t.beta = j.at("beta").get<double>();
  t.gamma = j.at("gamma").get<double>();
  t.population = j.value("population", 0L);
  t.omega = j.value("omega", 0);
  t.first_infection = j.value("I_first", 0.0);
  if (j.contains("I")) t.infection = j["I"].get<std::vector<double>>();
  for (const auto& e : j.at("events"))
    t.events.push_back({e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>()});
  return t;
}

EpidemicTruth load_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open truth file: " + path);
  try {
    json j;
    in >> j;
    return truth_from_json(j);
  } catch (const json::exception& e) {
    throw DataError("bad truth file " + path + ": " + e.what());
  }
}

namespace {
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

void write_removals_csv(const std::string& path, const RemovalData& data) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write removals CSV: " + path);
  out << "removal_time\n";
  for (double t : data.times()) out << fmt(t) << '\n';
}

void write_truth_json(const std::string& path, const SimResult& sim) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write truth JSON: " + path);
  out << truth_to_json(sim.truth, sim.final_size()).dump() << '\n';
}

void write_band_csv(const std::string& path, const GridSummary& s,
                    const EpidemicTruth* truth) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write band CSV: " + path);
  out << (truth ? "t,q05,q50,q95,truth,covered\n" : "t,q05,q50,q95\n");
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    out << fmt(s.t[i]) << ',' << fmt(s.q05[i]) << ',' << fmt(s.q50[i]) << ','
        << fmt(s.q95[i]);
    if (truth) {
      const double h = truth->true_rate(s.t[i]);
      out << ',' << fmt(h) << ',' << ((s.q05[i] <= h && h <= s.q95[i]) ? 1 : 0);
    }
    out << '\n';
  }
}

}  // namespace epirate
