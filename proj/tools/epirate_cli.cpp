// Command-line front end. Everything goes through the C API in epirate.h so
// the shared library surface is exercised end to end.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epirate.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return 0;
  std::uint64_t h = 1469598103934665603ULL;
  char buf[65536];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::uint64_t fnv1a_str(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// relative outputs land under $EPIRATE_OUT_DIR when it is set
fs::path resolve_out(const std::string& p) {
  const char* dir = std::getenv("EPIRATE_OUT_DIR");
  fs::path path(p);
  if (dir && *dir && path.is_relative()) path = fs::path(dir) / path;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  return path;
}

void write_manifest(const fs::path& anchor, json manifest) {
  manifest["tool"] = "epirate";
  manifest["version"] = epirate_version();
  const fs::path mpath = anchor.string() + ".manifest.json";
  std::ofstream out(mpath);
  out << manifest.dump(2) << '\n';
}

int fail(epirate_status st) {
  std::cerr << "error: " << epirate_last_error() << '\n';
  switch (st) {
    case EPIRATE_ERR_ARGUMENT:
      return 1;
    case EPIRATE_ERR_DATA:
      return 2;
    case EPIRATE_ERR_VALIDATION:
      return 3;
    default:
      return 2;
  }
}

// "n" and "4.6n" scale by the dataset size; plain numbers pass through
double parse_n_relative(const std::string& s, std::size_t n) {
  if (!s.empty() && (s.back() == 'n' || s.back() == 'N')) {
    const std::string head = s.substr(0, s.size() - 1);
    return (head.empty() ? 1.0 : std::stod(head)) * static_cast<double>(n);
  }
  return std::stod(s);
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct SinkState {
  std::ofstream out;
  long long count = 0;
  bool progress = false;
};

int sample_sink(const char* line, void* user) {
  auto* st = static_cast<SinkState*>(user);
  st->out << line << '\n';
  ++st->count;
  if (st->progress && st->count % 1000 == 0)
    std::cerr << "  " << st->count << " samples\r" << std::flush;
  return st->out ? 0 : 1;
}

}  // namespace

static int cmd_simulate(long population, double beta, double gamma, bool seasonal,
                        std::uint64_t seed, long min_final_size, bool major_outbreak,
                        const std::string& out_removals, const std::string& out_truth) {
  if (major_outbreak) min_final_size = std::max<long>(min_final_size, population / 10);
  const json cfg = {{"population", population}, {"beta", beta},
                    {"gamma", gamma},           {"seasonal", seasonal},
                    {"seed", seed},             {"min_final_size", min_final_size}};
  const fs::path removals = resolve_out(out_removals);
  const fs::path truth = resolve_out(out_truth);
  long final_size = 0;
  const auto t0 = std::chrono::steady_clock::now();
  const epirate_status st = epirate_simulate(cfg.dump().c_str(), removals.c_str(),
                                             truth.c_str(), &final_size);
  if (st != EPIRATE_OK) return fail(st);
  json manifest = {{"command", "simulate"},
                   {"config", cfg},
                   {"config_hash", hex64(fnv1a_str(cfg.dump()))},
                   {"seed", seed},
                   {"outputs",
                    {{removals.string(), hex64(fnv1a_file(removals))},
                     {truth.string(), hex64(fnv1a_file(truth))}}},
                   {"final_size", final_size},
                   {"wall_seconds", elapsed_s(t0)}};
  write_manifest(removals, manifest);
  std::cout << "simulated epidemic: final size " << final_size << ", removals in "
            << removals.string() << '\n';
  return 0;
}

struct FitArgs {
  std::string model = "step-indep";
  std::string data;
  std::string out = "posterior.jsonl";
  long long iterations = 100000;
  long long burn_in = 0;
  long long thin = 1;
  std::uint64_t seed = 1;
  int chains = 1;
  double lambda = 10.0;
  int kmax = 50;
  double kappa = 1.0;
  double a = 1.0, b = 0.0;
  double alpha = 1.0, alpha0 = 1.0, beta0 = 0.0;
  double theta = 0.0;
  std::string kappa_gamma = "1";
  std::string mu_gamma = "0";
  long population = 0;
  double nu_beta = 1.0, lambda_beta = 0.0;
  int within_repeats = 1;
  int inf_updates = 0;
  bool no_latents = false;
  bool progress = false;
};

static int cmd_fit(const FitArgs& a) {
  epirate_dataset* data = nullptr;
  epirate_status st = epirate_dataset_load_csv(a.data.c_str(), &data);
  if (st != EPIRATE_OK) return fail(st);
  const std::size_t n = epirate_dataset_size(data);

  json cfg;
  try {
    cfg = {{"model", a.model},
           {"iterations", a.iterations},
           {"burn_in", a.burn_in},
           {"thin", a.thin},
           {"within_model_repeats", a.within_repeats},
           {"infection_updates", a.inf_updates},
           {"theta", a.theta},
           {"emit_latents", !a.no_latents},
           {"gamma_prior",
            {{"kappa", parse_n_relative(a.kappa_gamma, n)},
             {"mu", parse_n_relative(a.mu_gamma, n)}}},
           {"rate_prior",
            {{"lambda", a.lambda},
             {"k_max", a.kmax},
             {"kappa", a.kappa},
             {"a", a.a},
             {"b", a.b},
             {"alpha", a.alpha},
             {"alpha0", a.alpha0},
             {"beta0", a.beta0}}}};
  } catch (const std::exception& e) {
    std::cerr << "error: bad n-relative value: " << e.what() << '\n';
    epirate_dataset_free(data);
    return 1;
  }
  if (a.model == "mass-action") {
    cfg["population"] = a.population;
    cfg["beta_prior"] = {{"nu", a.nu_beta}, {"lambda", a.lambda_beta}};
  }

  const fs::path base = resolve_out(a.out);
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<fs::path> outputs;
  std::vector<epirate_status> results(static_cast<std::size_t>(a.chains), EPIRATE_OK);
  std::vector<std::string> errors(static_cast<std::size_t>(a.chains));
  std::vector<std::thread> threads;
  for (int c = 0; c < a.chains; ++c) {
    fs::path out = base;
    if (a.chains > 1) {
      fs::path stem = base.stem();
      stem += ".chain" + std::to_string(c);
      stem += base.extension();
      out = base.parent_path() / stem;
    }
    outputs.push_back(out);
    json chain_cfg = cfg;
    chain_cfg["seed"] = a.seed + static_cast<std::uint64_t>(c);
    threads.emplace_back([data, chain_cfg, out, c, &results, &errors, &a]() {
      epirate_sampler* s = nullptr;
      epirate_status cst = epirate_sampler_create(data, chain_cfg.dump().c_str(), &s);
      if (cst != EPIRATE_OK) {
        results[c] = cst;
        errors[c] = epirate_last_error();
        return;
      }
      SinkState sink;
      sink.out.open(out);
      sink.progress = a.progress && c == 0;
      if (!sink.out) {
        results[c] = EPIRATE_ERR_DATA;
        errors[c] = "cannot write " + out.string();
      } else {
        cst = epirate_sampler_run(s, &sample_sink, &sink);
        if (cst != EPIRATE_OK) {
          results[c] = cst;
          errors[c] = epirate_last_error();
        }
      }
      epirate_sampler_free(s);
    });
  }
  for (auto& t : threads) t.join();
  epirate_dataset_free(data);
  for (int c = 0; c < a.chains; ++c) {
    if (results[c] != EPIRATE_OK) {
      std::cerr << "error (chain " << c << "): " << errors[c] << '\n';
      return results[c] == EPIRATE_ERR_ARGUMENT ? 1 : 2;
    }
  }

  json outs = json::object();
  for (const auto& p : outputs) outs[p.string()] = hex64(fnv1a_file(p));
  json manifest = {{"command", "fit"},
                   {"config", cfg},
                   {"config_hash", hex64(fnv1a_str(cfg.dump()))},
                   {"seed", a.seed},
                   {"chains", a.chains},
                   {"n", n},
                   {"inputs", {{a.data, hex64(fnv1a_file(a.data))}}},
                   {"outputs", outs},
                   {"wall_seconds", elapsed_s(t0)}};
  write_manifest(base, manifest);
  if (a.progress) std::cerr << '\n';
  std::cout << "fit complete: n=" << n << ", " << a.chains << " chain(s), "
            << elapsed_s(t0) << " s\n";
  return 0;
}

static int cmd_summarize(const std::string& in, const std::string& out, int grid,
                         bool per_infective, long burn_in, long thin,
                         const std::string& truth, const std::string& data) {
  const json opt = {{"grid", grid},
                    {"per_infective", per_infective},
                    {"burn_in_samples", burn_in},
                    {"thin", thin}};
  const fs::path band = resolve_out(out);
  const auto t0 = std::chrono::steady_clock::now();
  const epirate_status st =
      epirate_summarize(in.c_str(), opt.dump().c_str(), data.empty() ? nullptr : data.c_str(),
                        truth.empty() ? nullptr : truth.c_str(), band.c_str());
  if (st != EPIRATE_OK) return fail(st);
  json inputs = {{in, hex64(fnv1a_file(in))}};
  if (!truth.empty()) inputs[truth] = hex64(fnv1a_file(truth));
  if (!data.empty()) inputs[data] = hex64(fnv1a_file(data));
  write_manifest(band, json{{"command", "summarize"},
                            {"options", opt},
                            {"inputs", inputs},
                            {"outputs", {{band.string(), hex64(fnv1a_file(band))}}},
                            {"wall_seconds", elapsed_s(t0)}});
  std::cout << "bands written to " << band.string() << '\n';
  return 0;
}

static int cmd_validate_prior(const std::string& family, double lambda, int kmax,
                              double kappa, double mu, long long iterations,
                              std::uint64_t seed, double tv_threshold,
                              double ks_p_threshold, const std::string& report_path) {
  const json cfg = {{"family", family},
                    {"lambda", lambda},
                    {"k_max", kmax},
                    {"kappa", kappa},
                    {"mu", mu},
                    {"iterations", iterations},
                    {"seed", seed},
                    {"tv_threshold", tv_threshold},
                    {"ks_p_threshold", ks_p_threshold}};
  char* report = nullptr;
  const epirate_status st = epirate_validate_prior(cfg.dump().c_str(), &report);
  if (st != EPIRATE_OK && st != EPIRATE_ERR_VALIDATION) return fail(st);
  const std::string text = report ? report : "{}";
  epirate_string_free(report);
  std::cout << text << '\n';
  if (!report_path.empty()) {
    std::ofstream out(resolve_out(report_path));
    out << text << '\n';
  }
  if (st == EPIRATE_ERR_VALIDATION) {
    std::cerr << "prior validation FAILED thresholds\n";
    return 3;
  }
  return 0;
}

int main(int argc, char** argv) {
  CLI::App app{"Bayesian non-parametric infection-rate estimation from removal times"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulate an SIR epidemic");
  long population = 1000;
  double beta = 1.7e-3, gamma = 1.0;
  bool seasonal = false, major = false;
  std::uint64_t sim_seed = 1;
  long min_final = 0;
  std::string out_removals = "removals.csv", out_truth = "truth.json";
  sim->add_option("--n,--population", population, "initial susceptibles");
  sim->add_option("--beta", beta, "infection rate");
  sim->add_option("--gamma", gamma, "removal rate");
  sim->add_flag("--seasonal", seasonal, "seasonal rate beta(1+cos(t-I1))XY");
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--min-final-size", min_final, "resimulate until this many infected");
  sim->add_flag("--major-outbreak", major, "shorthand for --min-final-size N/10");
  sim->add_option("--out-removals", out_removals, "removals CSV path");
  sim->add_option("--out-truth", out_truth, "truth JSON path");

  // fit
  auto* fit = app.add_subcommand("fit", "sample the posterior of h(t), gamma and I");
  FitArgs fa;
  fit->add_option("--model", fa.model, "step-indep | step-martingale | bspline | mass-action")
      ->check(CLI::IsMember({"step-indep", "step-martingale", "bspline", "mass-action"}));
  fit->add_option("--data", fa.data, "removal-times CSV")->required();
  fit->add_option("--out", fa.out, "posterior JSONL path");
  fit->add_option("--iterations", fa.iterations, "MCMC iterations");
  fit->add_option("--burn-in", fa.burn_in, "iterations to discard");
  fit->add_option("--thin", fa.thin, "keep every thin-th sample");
  fit->add_option("--seed", fa.seed, "RNG seed");
  fit->add_option("--chains", fa.chains, "independent chains (derived seeds)")
      ->check(CLI::PositiveNumber);
  fit->add_option("--lambda", fa.lambda, "Poisson rate of the changepoint/knot count");
  fit->add_option("--kmax", fa.kmax, "truncation of k");
  fit->add_option("--kappa", fa.kappa, "Gamma shape of heights/coefficients");
  fit->add_option("--a", fa.a, "Gamma shape of the mu hyperprior");
  fit->add_option("--b", fa.b, "Gamma rate of the mu hyperprior (0 = improper)");
  fit->add_option("--alpha", fa.alpha, "martingale chain shape");
  fit->add_option("--alpha0", fa.alpha0, "martingale h0 shape");
  fit->add_option("--beta0", fa.beta0, "martingale h0 rate (0 = flat kernel)");
  fit->add_option("--theta", fa.theta, "Exp prior rate on R_1 - I_omega");
  fit->add_option("--kappa-gamma", fa.kappa_gamma,
                  "gamma prior shape; accepts n-relative values like 'n'");
  fit->add_option("--mu-gamma", fa.mu_gamma,
                  "gamma prior rate; accepts n-relative values like '4.6n'");
  fit->add_option("--population", fa.population, "initial susceptibles (mass-action)");
  fit->add_option("--nu-beta", fa.nu_beta, "beta prior shape (mass-action)");
  fit->add_option("--lambda-beta", fa.lambda_beta, "beta prior rate (mass-action)");
  fit->add_option("--within-model-repeats", fa.within_repeats,
                  "repeats of the move/height updates per iteration");
  fit->add_option("--inf-updates", fa.inf_updates,
                  "infection-time updates per iteration (0 = n/10)");
  fit->add_flag("--no-latents", fa.no_latents, "omit infection times from samples");
  fit->add_flag("--progress", fa.progress, "report progress on stderr");

  // summarize
  auto* sum = app.add_subcommand("summarize", "posterior quantile bands on a time grid");
  std::string sum_in, sum_out = "bands.csv", sum_truth, sum_data;
  int grid = 512;
  bool per_infective = false;
  long sum_burn = 0, sum_thin = 1;
  sum->add_option("--in", sum_in, "posterior JSONL")->required();
  sum->add_option("--out", sum_out, "band CSV path");
  sum->add_option("--grid", grid, "grid points");
  sum->add_flag("--per-infective", per_infective, "summarize h(t)/Y_t instead of h(t)");
  sum->add_option("--burn-in", sum_burn, "samples to skip");
  sum->add_option("--thin", sum_thin, "keep every thin-th sample");
  sum->add_option("--truth", sum_truth, "truth JSON for coverage columns");
  sum->add_option("--data", sum_data, "removals CSV (per-infective and mass-action)");

  // validate-prior
  auto* val = app.add_subcommand("validate-prior",
                                 "check the RJ sampler against forward prior draws");
  std::string family = "step", report_path;
  double v_lambda = 10.0, v_kappa = 1.0, v_mu = 1.0, tv_thr = 0.05, ks_thr = 0.01;
  int v_kmax = 50;
  long long v_iters = 100000;
  std::uint64_t v_seed = 1;
  val->add_option("--family", family, "step | bspline")
      ->check(CLI::IsMember({"step", "bspline"}));
  val->add_option("--lambda", v_lambda, "Poisson rate");
  val->add_option("--kmax", v_kmax, "truncation");
  val->add_option("--kappa", v_kappa, "value shape");
  val->add_option("--mu", v_mu, "value rate (held fixed)");
  val->add_option("--iterations", v_iters, "chain length");
  val->add_option("--seed", v_seed, "RNG seed");
  val->add_option("--tv-threshold", tv_thr, "max TV distance on k");
  val->add_option("--ks-p-threshold", ks_thr, "min KS p-value");
  val->add_option("--report", report_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(population, beta, gamma, seasonal, sim_seed, min_final, major,
                          out_removals, out_truth);
    if (fit->parsed()) return cmd_fit(fa);
    if (sum->parsed())
      return cmd_summarize(sum_in, sum_out, grid, per_infective, sum_burn, sum_thin,
                           sum_truth, sum_data);
    if (val->parsed())
      return cmd_validate_prior(family, v_lambda, v_kmax, v_kappa, v_mu, v_iters, v_seed,
                                tv_thr, ks_thr, report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
