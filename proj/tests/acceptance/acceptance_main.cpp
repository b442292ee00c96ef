// One PASS/FAIL line per criterion. `--criterion NAME` runs just that one.

#include <chrono>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "criteria.hpp"

using namespace graphjoin::acceptance;

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle_equivalence", oracle_equivalence},
      {"commutativity", commutativity},
      {"associativity", associativity},
      {"index_symmetry", index_symmetry},
      {"dovetail_injectivity", dovetail_injectivity},
      {"cost_model", cost_model},
      {"disjunction_bound", disjunction_bound},
      {"desk_scale", desk_scale},
      {"io_round_trip", io_round_trip},
  };
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = argv[++i];
    } else {
      fmt::print(stderr, "usage: {} [--criterion NAME]\n", argv[0]);
      return 2;
    }
  }
  bool all = true, ran = false;
  for (const auto& [name, check] : criteria) {
    if (!only.empty() && name != only) continue;
    ran = true;
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = check();
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fmt::print("{} {} ({:.2f} s): {}\n", o.pass ? "PASS" : "FAIL", name, s, o.detail);
    if (!o.note.empty()) fmt::print("     note: {}\n", o.note);
    std::fflush(stdout);
    all = all && o.pass;
  }
  if (!ran) {
    fmt::print(stderr, "unknown criterion {}\n", only);
    return 2;
  }
  return all ? 0 : 1;
}
