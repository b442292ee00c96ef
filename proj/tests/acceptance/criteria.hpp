#pragma once

#include <string>

namespace graphjoin::acceptance {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::string note;  // non-gating observations
};

Outcome oracle_equivalence();
Outcome commutativity();
Outcome associativity();
Outcome index_symmetry();
Outcome dovetail_injectivity();
Outcome cost_model();
Outcome disjunction_bound();
Outcome desk_scale();
Outcome io_round_trip();

}  // namespace graphjoin::acceptance
