#include "vrsgd/bench/config.hpp"
#include "vrsgd/bench/experiment.hpp"
#include "vrsgd/bench/synth.hpp"
#include "vrsgd/bench/verify.hpp"
#include "vrsgd/diagnostics.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

int cmd_run(const std::string& path) {
  const auto cfg = vrsgd::bench::load_experiment_config(path);
  const auto report = vrsgd::bench::run_experiment(cfg);
  if (report.optimum) std::cout << "optimum " << vrsgd::detail::format_real(*report.optimum) << '\n';
  for (const auto& run : report.runs) {
    std::cout << run.solver << " seed " << run.seed << ": " << vrsgd::to_string(run.record.status) << ", "
              << run.record.epochs.size() << " epochs -> " << run.csv.string() << '\n';
  }
  std::cout << "summary -> " << report.summary_path.string() << '\n';
  return 0;
}

int cmd_gen(vrsgd::Index n, vrsgd::Index d, const std::string& kind, std::uint64_t seed, double density,
            const std::string& out) {
  const auto ds = vrsgd::bench::generate_synthetic(vrsgd::bench::synth_kind_from_string(kind), n, d, seed, density);
  const std::string text = vrsgd::serialize_libsvm(ds);
  if (out.empty() || out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write " + out);
  file << text;
  if (!file) throw std::runtime_error("write failed for " + out);
  return 0;
}

int cmd_rate(double L, double mu, double eta, long long m, double c, const std::string& option) {
  if (option != "I" && option != "II") throw std::invalid_argument("--option must be I or II");
  const auto r = vrsgd::theoretical_rate_sc(L, mu, eta, m, c, option == "I" ? vrsgd::RateOption::I : vrsgd::RateOption::II);
  std::printf("rho = %.6f\n%s\n", r.rho, r.convergent ? "convergent" : "not convergent (rho >= 1)");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variance-reduced SGD experiments"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run an experiment file");
  run->add_option("config", config_path, "experiment file")->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "run the built-in oracle checks");

  vrsgd::Index n = 0, d = 0;
  std::string kind = "ridge", out;
  std::uint64_t seed = 1;
  double density = 0.002;
  auto* gen = app.add_subcommand("gen-synth", "write a synthetic instance in LIBSVM format");
  gen->add_option("--n", n, "samples")->required()->check(CLI::PositiveNumber);
  gen->add_option("--d", d, "features")->required()->check(CLI::PositiveNumber);
  gen->add_option("--kind", kind, "ridge, logistic, sigmoid, sparse or eigen")->capture_default_str();
  gen->add_option("--seed", seed, "generator seed")->capture_default_str();
  gen->add_option("--density", density, "nonzero fraction for --kind sparse")->capture_default_str();
  gen->add_option("--out", out, "output file (stdout when omitted)");

  double L = 0, mu = 0, eta = 0, c = 1;
  long long m = 0;
  std::string option = "II";
  auto* rate = app.add_subcommand("rate", "per-epoch contraction factor for strongly convex problems");
  rate->add_option("--L", L, "smoothness")->required();
  rate->add_option("--mu", mu, "strong convexity")->required();
  rate->add_option("--eta", eta, "step size")->required();
  rate->add_option("--m", m, "epoch length")->required();
  rate->add_option("--c", c, "snapshot constant")->capture_default_str();
  rate->add_option("--option", option, "I or II")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path);
    if (*verify) return vrsgd::bench::print_checks(vrsgd::bench::run_verify_suite(), std::cout) ? 0 : 1;
    if (*gen) return cmd_gen(n, d, kind, seed, density, out);
    if (*rate) return cmd_rate(L, mu, eta, m, c, option);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
