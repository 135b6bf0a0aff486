// kershaw_cli: run, sweep or tabulate moment models from a key = value config.
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kershaw/commands.hpp"
#include "kershaw/config.hpp"
#include "kershaw/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic moment models in slab geometry"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  app.add_option("--out", out_dir, "Output directory (overrides output_dir)");

  auto* run = app.add_subcommand("run", "Run one model, optionally against a reference");
  run->add_option("config", config_path, "Config file")->required();
  auto* sweep = app.add_subcommand("sweep", "Run the model at every order in `orders`");
  sweep->add_option("config", config_path, "Config file")->required();
  auto* surface = app.add_subcommand("surface", "Tabulate the order-2 closure surface");
  surface->add_option("config", config_path, "Config file")->required();
  for (auto* sub : {run, sweep, surface}) {
    sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  kershaw::RunConfig config;
  try {
    config = kershaw::parse_config_file(config_path);
  } catch (const kershaw::ParseError& e) {
    std::cerr << "config error in " << config_path << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const kershaw::ValidationError& e) {
    std::cerr << "config error in " << config_path << " (field " << e.field() << "): " << e.what()
              << '\n';
    return kExitConfig;
  }
  const std::filesystem::path out = out_dir.empty() ? config.output_dir : out_dir;

  try {
    std::vector<std::filesystem::path> files;
    if (run->parsed()) {
      files = kershaw::run_command(config, out);
    } else if (sweep->parsed()) {
      files = kershaw::sweep_command(config, out, kershaw::job_count_from_env());
    } else {
      files = kershaw::surface_command(config, out);
    }
    for (const auto& f : files) std::cout << f.string() << '\n';
  } catch (const kershaw::ValidationError& e) {
    std::cerr << "config error (field " << e.field() << "): " << e.what() << '\n';
    return kExitConfig;
  } catch (const kershaw::RealizabilityLost& e) {
    std::cerr << "solver abort: " << e.what() << "\n  config: " << config.echo()
              << "\n  cell: " << e.cell() << "\n  normalized slack: " << e.slack() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "solver abort: " << e.what() << "\n  config: " << config.echo() << '\n';
    return kExitSolver;
  }
  return 0;
}
