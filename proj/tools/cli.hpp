#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

namespace graphjoin::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kIoError = 3 };

/// Thrown for bad flag combinations found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string config_path;
  std::map<std::string, std::string> config;
  std::optional<unsigned> threads;

  /// Reads --config; every command calls this before consulting defaults.
  void load_config();
  /// --threads, else the config file, else GRAPHJOIN_THREADS, else 1.
  unsigned thread_cap() const;
  /// Config value for a flag the user did not pass.
  std::optional<std::string> config_value(const std::string& key) const;
};

/// "a=b" -> (a, b); a bare "a" means a=a.
std::vector<std::pair<std::string, std::string>> parse_on(const std::vector<std::string>& specs);

void add_generate(CLI::App& app, Globals& globals);
void add_load(CLI::App& app, Globals& globals);
void add_index(CLI::App& app, Globals& globals);
void add_join(CLI::App& app, Globals& globals);
void add_verify(CLI::App& app, Globals& globals);
void add_bench(CLI::App& app, Globals& globals);

/// Set by the subcommand callbacks.
int& command_status();

}  // namespace graphjoin::cli
