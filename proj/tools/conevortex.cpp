#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "conevortex/cli.hpp"
#include "conevortex/io.hpp"
#include "conevortex/kernels.hpp"

namespace {

void report(const nlohmann::json& err) { std::cerr << err.dump() << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering on a conical vortex: profiles, amplitudes and cross sections"};
  app.set_version_flag("--version", conevortex::io::kVersion);
  std::string command;
  std::string config_file;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  app.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(conevortex::cli::kCommands));
  app.add_option("--config", config_file, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--set", overrides, "Override a key: dotted.key=value")->take_all();
  app.add_option("--out", out_dir, "Output directory");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("CONEVORTEX_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) {
      report({{"error", "config"}, {"message", "CONEVORTEX_WORKERS must be a positive integer"}, {"exit_code", 2}});
      return 2;
    }
    conevortex::kernels::set_workers(static_cast<int>(n));
  }

  std::string text;
  if (!config_file.empty()) {
    std::ifstream f(config_file);
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  overrides.insert(overrides.begin(), "command=" + command);

  conevortex::cli::RunConfig config;
  try {
    config = conevortex::cli::parse_config(text, overrides);
  } catch (const conevortex::ConfigError& e) {
    report({{"error", "config"}, {"message", e.what()}, {"key_path", e.key_path()}, {"exit_code", 2}});
    return 2;
  }
  const auto result = conevortex::cli::execute(config, out_dir);
  for (const auto& f : result.files) std::cout << f.string() << '\n';
  if (result.exit_code != 0) report(result.error);
  return result.exit_code;
}
