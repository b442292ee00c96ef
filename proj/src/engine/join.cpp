#include "graphjoin/engine/join.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "graphjoin/kernels/intersect.hpp"

namespace graphjoin::engine {
namespace {

using Clock = std::chrono::steady_clock;

void check_deadline(const EngineOptions& options) {
  if (options.deadline && Clock::now() > *options.deadline) {
    throw Error(ErrorCode::kTimeout, "join exceeded its time limit");
  }
}

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(threads, n);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(n);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct EdgePair {
  ElementId left;
  ElementId right;
};

struct BucketWork {
  std::size_t left_pos = 0;
  std::size_t right_pos = 0;
  std::vector<std::pair<std::size_t, std::size_t>> matches;  // record offsets in the buckets
  std::vector<EdgePair> conjunctive;
  std::vector<ElementId> left_unbonded;   // E_L in out-list order
  std::vector<ElementId> right_unbonded;  // E_R
  BucketTrace trace;
  std::uint64_t matched = 0;
  std::uint64_t bonds = 0;
};

std::vector<std::uint64_t> directory_hashes(const EngineIndex& index) {
  std::vector<std::uint64_t> out;
  out.reserve(index.hash_offset.size());
  for (const BucketEntry& b : index.hash_offset) out.push_back(b.hash);
  return out;
}

std::uint64_t out_edges(std::span<const VertexRecord> bucket) {
  std::uint64_t n = 0;
  for (const VertexRecord& r : bucket) n += r.out.size();
  return n;
}

void match_vertices(const GraphDatabase& db, const EngineIndex& left, const EngineIndex& right,
                    const EngineOptions& options, BucketWork& work) {
  const auto lb = left.bucket(work.left_pos);
  const auto rb = right.bucket(work.right_pos);
  std::vector<Tuple> right_payloads;
  if (!options.skip_theta_recheck) {
    right_payloads.reserve(rb.size());
    for (const VertexRecord& y : rb) right_payloads.push_back(db.payload(y.vertex));
  }
  for (std::size_t i = 0; i < lb.size(); ++i) {
    const Tuple left_payload = options.skip_theta_recheck ? Tuple{} : db.payload(lb[i].vertex);
    for (std::size_t j = 0; j < rb.size(); ++j) {
      ++work.trace.vertex_comparisons;
      if (options.skip_theta_recheck ||
          (lb[i].key == rb[j].key && relational::agrees_on_shared(left_payload, right_payloads[j]))) {
        work.matches.emplace_back(i, j);
      }
    }
  }
  work.matched = work.matches.size();
}

void bond_edges(const GraphDatabase& db, const EngineIndex& left, const EngineIndex& right,
                const logical::VertexJoin& joined, BucketWork& work) {
  const auto lb = left.bucket(work.left_pos);
  const auto rb = right.bucket(work.right_pos);
  std::vector<std::size_t> left_start(lb.size() + 1, 0), right_start(rb.size() + 1, 0);
  for (std::size_t i = 0; i < lb.size(); ++i) left_start[i + 1] = left_start[i] + lb[i].out.size();
  for (std::size_t j = 0; j < rb.size(); ++j) right_start[j + 1] = right_start[j] + rb[j].out.size();
  std::vector<bool> left_bonded(left_start.back(), false), right_bonded(right_start.back(), false);

  for (const auto& [i, j] : work.matches) {
    const auto& xo = lb[i].out;
    const auto& yo = rb[j].out;
    std::size_t p = 0, q = 0;
    while (p < xo.size() && q < yo.size()) {
      if (xo[p].target_hash < yo[q].target_hash) {
        ++p;
      } else if (yo[q].target_hash < xo[p].target_hash) {
        ++q;
      } else {
        const std::uint64_t h = xo[p].target_hash;
        std::size_t p_end = p, q_end = q;
        while (p_end < xo.size() && xo[p_end].target_hash == h) ++p_end;
        while (q_end < yo.size() && yo[q_end].target_hash == h) ++q_end;
        for (std::size_t s = p; s < p_end; ++s) {
          for (std::size_t t = q; t < q_end; ++t) {
            ++work.trace.edge_comparisons;
            if (!joined.contains(xo[s].target, yo[t].target)) continue;
            ++work.bonds;
            left_bonded[left_start[i] + s] = true;
            right_bonded[right_start[j] + t] = true;
            if (relational::agrees_on_shared(db.payload(xo[s].edge), db.payload(yo[t].edge))) {
              work.conjunctive.push_back({xo[s].edge, yo[t].edge});
            }
          }
        }
        p = p_end;
        q = q_end;
      }
    }
  }

  for (std::size_t i = 0; i < lb.size(); ++i) {
    for (std::size_t s = 0; s < lb[i].out.size(); ++s) {
      if (!left_bonded[left_start[i] + s]) work.left_unbonded.push_back(lb[i].out[s].edge);
    }
  }
  for (std::size_t j = 0; j < rb.size(); ++j) {
    for (std::size_t t = 0; t < rb[j].out.size(); ++t) {
      if (!right_bonded[right_start[j] + t]) work.right_unbonded.push_back(rb[j].out[t].edge);
    }
  }
  work.trace.left_unbonded = work.left_unbonded.size();
  work.trace.right_unbonded = work.right_unbonded.size();
}

}  // namespace

EngineJoinResult join_indexes(GraphDatabase& db, const EngineIndex& left,
                              const EngineIndex& right, EdgeSemantics semantics,
                              const EngineOptions& options) {
  if (left.key_attributes.size() != right.key_attributes.size()) {
    throw Error(ErrorCode::kSpecMismatch,
                "join key arity differs: " + std::to_string(left.key_attributes.size()) + " vs " +
                    std::to_string(right.key_attributes.size()));
  }
  if (left.hash_mode != right.hash_mode) {
    throw Error(ErrorCode::kInvalidArgument, "indexes were built with different hash modes");
  }
  const auto start = Clock::now();
  const GraphView ga = db.get_graph(left.component);
  const GraphView gb = db.get_graph(right.component);

  EngineJoinResult out;
  out.left_index = left.stats();
  out.right_index = right.stats();

  kernels::PositionPairs shared;
  kernels::intersect_sorted(directory_hashes(left), directory_hashes(right), shared);
  std::vector<BucketWork> work(shared.size());
  for (std::size_t k = 0; k < shared.size(); ++k) {
    BucketWork& w = work[k];
    w.left_pos = shared[k].first;
    w.right_pos = shared[k].second;
    const auto lb = left.bucket(w.left_pos);
    const auto rb = right.bucket(w.right_pos);
    w.trace.hash = left.hash_offset[w.left_pos].hash;
    w.trace.left_vertices = lb.size();
    w.trace.right_vertices = rb.size();
    w.trace.left_out = out_edges(lb);
    w.trace.right_out = out_edges(rb);
  }

  parallel_for(work.size(), options.threads, [&](std::size_t k) {
    check_deadline(options);
    match_vertices(db, left, right, options, work[k]);
  });

  // Combined vertices are materialized in directory order.
  const IndexUniverse& va = ga.vertex_universe();
  const IndexUniverse& vb = gb.vertex_universe();
  logical::VertexJoin joined;
  for (const BucketWork& w : work) {
    check_deadline(options);
    const auto lb = left.bucket(w.left_pos);
    const auto rb = right.bucket(w.right_pos);
    for (const auto& [i, j] : w.matches) {
      const std::uint64_t replica = combine_indices(lb[i].replica, va, rb[j].replica, vb);
      joined.add(lb[i].vertex, rb[j].vertex,
                 db.combine_vertices(lb[i].vertex, rb[j].vertex, replica));
    }
  }

  parallel_for(work.size(), options.threads, [&](std::size_t k) {
    check_deadline(options);
    bond_edges(db, left, right, joined, work[k]);
  });

  // Fill edges: every unbonded edge pairs with ε once per pair of joined
  // vertices its endpoints combine into. ε replicas extend the universes.
  struct Fill {
    ElementId edge;
    ElementId empty;
  };
  std::vector<Fill> left_fills, right_fills;
  std::vector<std::uint64_t> left_indices = ga.edge_universe().values();
  std::vector<std::uint64_t> right_indices = gb.edge_universe().values();
  OpCounters& c = out.counters;
  if (semantics == EdgeSemantics::kDisjunctive) {
    for (BucketWork& w : work) {
      check_deadline(options);
      for (ElementId e : w.left_unbonded) {
        const Endpoints ends = db.endpoints(e);
        const auto& sources = joined.right_partners(ends.source);
        w.trace.fill_checks += sources.size();
        if (sources.empty()) continue;
        const auto& targets = joined.right_partners(ends.target);
        for (ElementId u : sources) {
          for (ElementId t : targets) {
            const ElementId empty = db.add_fill_edge(u, t);
            right_indices.push_back(db.replica(empty));
            left_fills.push_back({e, empty});
          }
        }
      }
      for (ElementId e : w.right_unbonded) {
        const Endpoints ends = db.endpoints(e);
        const auto& sources = joined.left_partners(ends.source);
        w.trace.fill_checks += sources.size();
        if (sources.empty()) continue;
        const auto& targets = joined.left_partners(ends.target);
        for (ElementId u : sources) {
          for (ElementId t : targets) {
            const ElementId empty = db.add_fill_edge(u, t);
            left_indices.push_back(db.replica(empty));
            right_fills.push_back({e, empty});
          }
        }
      }
    }
  }
  const IndexUniverse ea(std::move(left_indices));
  const IndexUniverse eb(std::move(right_indices));

  auto emit = [&](ElementId x, ElementId y) {
    const Endpoints l = db.endpoints(x);
    const Endpoints r = db.endpoints(y);
    const Endpoints ends{joined.find(l.source, r.source), joined.find(l.target, r.target)};
    return db.combine_edges(x, y, combine_indices(db.replica(x), ea, db.replica(y), eb), ends);
  };
  std::vector<ElementId> edges;
  for (const BucketWork& w : work) {
    check_deadline(options);
    for (const EdgePair& p : w.conjunctive) edges.push_back(emit(p.left, p.right));
  }
  for (const Fill& f : left_fills) edges.push_back(emit(f.edge, f.empty));
  for (const Fill& f : right_fills) edges.push_back(emit(f.empty, f.edge));

  out.buckets.reserve(work.size());
  for (const BucketWork& w : work) {
    c.bucket_visits += 1;
    c.vertex_comparisons += w.trace.vertex_comparisons;
    c.vertex_matches += w.matched;
    c.edge_comparisons += w.trace.edge_comparisons;
    c.edge_bonds += w.bonds;
    c.conjunctive_edges += w.conjunctive.size();
    if (semantics == EdgeSemantics::kDisjunctive) {
      c.fill_checks += w.trace.fill_checks;
      c.left_unbonded_peak = std::max(c.left_unbonded_peak, w.trace.left_unbonded);
      c.right_unbonded_peak = std::max(c.right_unbonded_peak, w.trace.right_unbonded);
    }
    out.buckets.push_back(w.trace);
  }
  c.fill_edge_emissions = left_fills.size() + right_fills.size();

  out.result.component = db.register_component(joined.vertices(), std::move(edges));
  out.result.semantics = semantics;
  out.times.join_ms = elapsed_ms(start);
  return out;
}

EngineJoinResult conjunctive_join(GraphDatabase& db, const EngineIndex& left,
                                  const EngineIndex& right, const EngineOptions& options) {
  return join_indexes(db, left, right, EdgeSemantics::kConjunctive, options);
}

EngineJoinResult disjunctive_join(GraphDatabase& db, const EngineIndex& left,
                                  const EngineIndex& right, const EngineOptions& options) {
  return join_indexes(db, left, right, EdgeSemantics::kDisjunctive, options);
}

EngineJoinResult equi_join(GraphDatabase& db, ComponentId a, ComponentId b,
                           const std::vector<std::pair<std::string, std::string>>& on,
                           EdgeSemantics semantics, const EngineOptions& options, HashMode mode) {
  if (on.empty()) throw Error(ErrorCode::kInvalidArgument, "equi-join needs at least one equality");
  std::vector<std::string> left_keys, right_keys;
  for (const auto& [l, r] : on) {
    left_keys.push_back(l);
    right_keys.push_back(r);
  }
  auto t0 = Clock::now();
  const LoadedOperand la = load(db.get_graph(a), std::move(left_keys), mode);
  const LoadedOperand lb = load(db.get_graph(b), std::move(right_keys), mode);
  const double load_ms = elapsed_ms(t0);
  check_deadline(options);
  t0 = Clock::now();
  const EngineIndex ia = build_index(la);
  const EngineIndex ib = build_index(lb);
  const double index_ms = elapsed_ms(t0);
  check_deadline(options);

  EngineJoinResult out = join_indexes(db, ia, ib, semantics, options);
  out.left_load = la.stats;
  out.right_load = lb.stats;
  out.times.load_ms = load_ms;
  out.times.index_ms = index_ms;
  return out;
}

}  // namespace graphjoin::engine
