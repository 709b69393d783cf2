#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "flab/experiments.hpp"
#include "flab/io.hpp"

namespace {

using CommandFn = void (*)(const std::map<std::string, std::string>&,
                           const std::string&, std::optional<std::uint64_t>,
                           int);

CommandFn lookup(const std::string& name) {
  if (name == "furstenberg") return flab::cmd_furstenberg;
  if (name == "ex1") return flab::cmd_ex1;
  if (name == "tangency") return flab::cmd_tangency;
  if (name == "uniformize") return flab::cmd_uniformize;
  if (name == "validate") return flab::cmd_validate;
  if (name == "oracle_diff") return flab::cmd_oracle_diff;
  return nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flab: discretized circle-family incidence experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed_value = 0;
  int jobs = 1;

  for (const char* name : {"furstenberg", "ex1", "tangency", "uniformize",
                           "validate", "oracle_diff"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "scenario config file")
        ->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--seed", seed_value, "override the config seed");
    sub->add_option("--jobs", jobs, "worker threads")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  std::optional<std::uint64_t> seed;
  if (sub->count("--seed") > 0) seed = seed_value;
  try {
    const auto cfg = flab::io::parse_config_file(config_path);
    std::filesystem::create_directories(out_dir);
    lookup(command)(cfg, out_dir, seed, jobs);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
