#include "report.hpp"

#include "graphjoin/io/csv.hpp"

namespace graphjoin::cli {

Json to_json(const engine::OpCounters& c) {
  return Json{{"bucket_visits", c.bucket_visits},
              {"vertex_comparisons", c.vertex_comparisons},
              {"vertex_matches", c.vertex_matches},
              {"edge_comparisons", c.edge_comparisons},
              {"edge_bonds", c.edge_bonds},
              {"conjunctive_edges", c.conjunctive_edges},
              {"fill_checks", c.fill_checks},
              {"fill_edge_emissions", c.fill_edge_emissions},
              {"left_unbonded_peak", c.left_unbonded_peak},
              {"right_unbonded_peak", c.right_unbonded_peak}};
}

void write_json(const std::string& path, const Json& report) {
  io::write_file(path, report.dump(2) + "\n");
}

}  // namespace graphjoin::cli
