#include "graphjoin/engine/explain.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace graphjoin::engine {
namespace {

double load_envelope(double vertices) {
  // Each insertion walks a red-black tree of height at most 2 log2(n + 1)
  // and does one more comparison for the equality check.
  return vertices * (2.0 * std::log2(vertices + 1.0) + 2.0);
}

}  // namespace

bool CostReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const CostRow& r) { return r.ok; });
}

CostReport explain(const EngineJoinResult& result) {
  CostReport report;
  const OpCounters& c = result.counters;
  auto add = [&](std::string term, double measured, double bound, bool exact) {
    const bool ok = exact ? measured == bound : measured <= bound;
    report.rows.push_back({std::move(term), measured, bound, exact, ok});
  };

  const double va = static_cast<double>(result.left_index.vertices);
  const double vb = static_cast<double>(result.right_index.vertices);
  add("loading comparisons",
      static_cast<double>(result.left_load.map_comparisons + result.right_load.map_comparisons),
      load_envelope(static_cast<double>(result.left_load.vertices)) +
          load_envelope(static_cast<double>(result.right_load.vertices)),
      false);

  const double ka = static_cast<double>(result.left_index.buckets);
  const double kb = static_cast<double>(result.right_index.buckets);
  add("shared buckets", static_cast<double>(c.bucket_visits), std::min(ka, kb), false);

  double vertex_product = 0, edge_product = 0, fill_bound = 0;
  for (const BucketTrace& t : result.buckets) {
    vertex_product += static_cast<double>(t.left_vertices) * static_cast<double>(t.right_vertices);
    edge_product += static_cast<double>(t.left_out) * static_cast<double>(t.right_out);
    fill_bound += static_cast<double>(t.right_vertices) * static_cast<double>(t.left_unbonded) +
                  static_cast<double>(t.left_vertices) * static_cast<double>(t.right_unbonded);
  }
  add("vertex comparisons = sum b_a*b_b", static_cast<double>(c.vertex_comparisons),
      vertex_product, true);
  add("edge comparisons <= sum out_a*out_b", static_cast<double>(c.edge_comparisons),
      edge_product, false);
  add("fill checks <= sum b_b*|E_L| + b_a*|E_R|", static_cast<double>(c.fill_checks), fill_bound,
      false);
  add("vertex comparisons <= |V_a|*|V_b|", static_cast<double>(c.vertex_comparisons), va * vb,
      false);

  report.worst_case_vertex_bound = va * vb;
  report.join_work = static_cast<double>(c.bucket_visits + c.vertex_comparisons +
                                         c.edge_comparisons + c.fill_checks);
  return report;
}

std::string to_text(const CostReport& report) {
  std::size_t width = 4;
  for (const CostRow& r : report.rows) width = std::max(width, r.term.size());
  std::string out = fmt::format("{:<{}}  {:>14}  {:>14}  {}\n", "term", width, "measured", "bound",
                                "status");
  for (const CostRow& r : report.rows) {
    const char* status = !r.ok ? "VIOLATED" : (r.measured == r.bound ? "binding" : "ok");
    out += fmt::format("{:<{}}  {:>14.0f}  {:>14.1f}  {}\n", r.term, width, r.measured, r.bound,
                       status);
  }
  return out;
}

}  // namespace graphjoin::engine
