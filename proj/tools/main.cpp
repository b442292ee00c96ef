// graphjoin: load, index, join, verify and benchmark property graph joins.

#include <cstdlib>
#include <iostream>

#include <fmt/format.h>

#include "cli.hpp"
#include "graphjoin/error.hpp"
#include "graphjoin/io/generator.hpp"

namespace graphjoin::cli {

int& command_status() {
  static int status = kOk;
  return status;
}

void Globals::load_config() {
  if (!config_path.empty() && config.empty()) config = io::read_config(config_path);
}

unsigned Globals::thread_cap() const {
  if (threads) return std::max(1u, *threads);
  if (auto v = config_value("threads")) return std::max(1, std::stoi(*v));
  if (const char* env = std::getenv("GRAPHJOIN_THREADS"); env != nullptr && *env != '\0') {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw UsageError(fmt::format("GRAPHJOIN_THREADS must be an integer, got '{}'", env));
    }
  }
  return 1;
}

std::optional<std::string> Globals::config_value(const std::string& key) const {
  auto it = config.find(key);
  if (it == config.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<std::string, std::string>> parse_on(const std::vector<std::string>& specs) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    std::string left = spec.substr(0, eq);
    std::string right = eq == std::string::npos ? left : spec.substr(eq + 1);
    if (left.empty() || right.empty()) {
      throw UsageError(fmt::format("--on expects attr=attr, got '{}'", spec));
    }
    out.emplace_back(std::move(left), std::move(right));
  }
  return out;
}

}  // namespace graphjoin::cli

int main(int argc, char** argv) {
  using namespace graphjoin;
  using namespace graphjoin::cli;

  CLI::App app{"Property graph theta-join engine"};
  app.name("graphjoin");
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--config", globals.config_path, "key=value file supplying defaults for flags");
  app.add_option("--threads", globals.threads, "Cap on engine worker threads");

  add_generate(app, globals);
  add_load(app, globals);
  add_index(app, globals);
  add_join(app, globals);
  add_verify(app, globals);
  add_bench(app, globals);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::kIo:
      case ErrorCode::kParse:
      case ErrorCode::kFormat:
      case ErrorCode::kDuplicateId:
      case ErrorCode::kDanglingEndpoint:
        return kIoError;
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kSpecMismatch:
        return kUsage;
      default:
        return kFailure;
    }
  }
  return command_status();
}
