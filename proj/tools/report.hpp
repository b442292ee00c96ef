#pragma once

#include <chrono>
#include <string>

#include <json.hpp>

#include "cli.hpp"
#include "graphjoin/engine/join.hpp"

namespace graphjoin::cli {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Json to_json(const engine::OpCounters& counters);
void write_json(const std::string& path, const Json& report);

/// Fills `value` from the config file when the flag was not given.
template <class T>
void config_default(const Globals& globals, const CLI::Option* option, const std::string& key,
                    T& value) {
  if (option->count() > 0) return;
  if (auto text = globals.config_value(key)) {
    if (!CLI::detail::lexical_cast(*text, value)) {
      throw UsageError("config key " + key + " has an invalid value '" + *text + "'");
    }
  }
}

}  // namespace graphjoin::cli
