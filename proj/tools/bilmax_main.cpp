#include <CLI11.hpp>

#include <iostream>

#include "bilmax/cli/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bilinear multiplier experiments"};
  app.require_subcommand(1);

  std::string config;
  bilmax::cli::RunOptions options;
  std::string out;
  int threads = -1;
  std::uint64_t seed = 0;

  CLI::App* run = app.add_subcommand("run", "Run the experiments of a config file");
  run->add_option("config", config, "JSON config file")->required();
  run->add_option("--override", options.overrides, "key.path=value, repeatable")->take_all();
  auto* out_opt = run->add_option("--out", out, "Output directory");
  auto* threads_opt = run->add_option("--threads", threads, "Worker threads, 0 = auto")->check(CLI::NonNegativeNumber);
  auto* seed_opt = run->add_option("--seed", seed, "Suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bilmax::cli::kExitInvalidConfig;
  }
  if (*out_opt) options.out_dir = out;
  if (*threads_opt) options.threads = threads;
  if (*seed_opt) options.seed = seed;
  return bilmax::cli::run(config, options, std::cerr);
}
