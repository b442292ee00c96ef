#pragma once

// Loading and indexing phases of the graph equi-join engine.
//
// Loading groups the vertices of one operand into buckets by the hash of
// their join key (an ordered map, so buckets come out sorted by hash) and
// collects each vertex's outgoing edges sorted by destination key.
//
// Indexing serializes the buckets into a flat layout: a directory of
// (bucket hash, offset, length) triples, the HashOffset, and the vertex
// records they point into, the VertexVals.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "graphjoin/database.hpp"

namespace graphjoin::engine {

enum class HashMode : std::uint8_t {
  kStable,    // 64-bit FNV-1a over the length-prefixed key values
  kConstant,  // every key in one bucket; for collision testing
};

/// Stable 64-bit hash of an ordered join key.
std::uint64_t key_hash(std::span<const AttributeValue> key, HashMode mode = HashMode::kStable);

struct OutEdge {
  std::uint64_t target_hash = 0;
  ElementId target;
  ElementId edge;

  friend bool operator==(const OutEdge&, const OutEdge&) = default;
};

struct LoadedVertex {
  ElementId vertex;
  std::uint64_t replica = 0;
  std::vector<AttributeValue> key;
  std::vector<OutEdge> out;  // sorted by (target key, target replica, edge)
};

struct LoadStats {
  std::uint64_t vertices = 0;          // indexed
  std::uint64_t vertices_skipped = 0;  // missing a key attribute
  std::uint64_t edges = 0;             // kept as out-edges
  std::uint64_t edges_skipped = 0;     // endpoint not indexed
  std::uint64_t map_comparisons = 0;   // key comparisons while building the map
};

/// An operand after loading: buckets in increasing hash order.
struct LoadedOperand {
  ComponentId component = 0;
  std::vector<std::string> key_attributes;
  HashMode hash_mode = HashMode::kStable;
  std::vector<std::pair<std::uint64_t, std::vector<LoadedVertex>>> buckets;
  LoadStats stats;
};

/// Throws kInvalidArgument for an empty key list.
LoadedOperand load(const GraphView& graph, std::vector<std::string> key_attributes,
                   HashMode mode = HashMode::kStable);

struct BucketEntry {
  std::uint64_t hash = 0;
  std::uint64_t offset = 0;  // into vertex_vals
  std::uint64_t length = 0;

  friend bool operator==(const BucketEntry&, const BucketEntry&) = default;
};

struct VertexRecord {
  ElementId vertex;
  std::uint64_t replica = 0;
  std::vector<AttributeValue> key;
  std::vector<OutEdge> out;

  friend bool operator==(const VertexRecord&, const VertexRecord&) = default;
};

struct BucketStats {
  std::uint64_t hash = 0;
  std::uint64_t vertices = 0;   // b_x^h
  std::uint64_t out_edges = 0;  // out_x^h
};

struct IndexStats {
  std::uint64_t buckets = 0;  // k_x
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  std::vector<BucketStats> per_bucket;
};

class EngineIndex {
 public:
  ComponentId component = 0;
  HashMode hash_mode = HashMode::kStable;
  std::vector<std::string> key_attributes;
  std::vector<BucketEntry> hash_offset;
  std::vector<VertexRecord> vertex_vals;

  IndexStats stats() const;
  std::span<const VertexRecord> bucket(std::size_t directory_position) const;

  /// Binary layout (little-endian):
  ///   "GJIX", u16 version,
  ///   u64 bucket count, then (u64 hash, u64 offset, u64 length) per bucket,
  ///   u64 record count, then per record: u64 byte length followed by
  ///     u32 vertex, u64 replica, u32 key count, (u32 length, bytes) per key,
  ///     u32 out-edge count, (u64 target hash, u32 target, u32 edge) per edge,
  ///   trailer: u32 component, u8 hash mode, u32 attribute count,
  ///     (u32 length, bytes) per key attribute.
  std::vector<std::uint8_t> serialize() const;
  static EngineIndex deserialize(std::span<const std::uint8_t> bytes);

  void write(const std::string& path) const;
  static EngineIndex read(const std::string& path);

  friend bool operator==(const EngineIndex&, const EngineIndex&) = default;
};

inline constexpr std::uint16_t kIndexFormatVersion = 1;

EngineIndex build_index(const LoadedOperand& loaded);

}  // namespace graphjoin::engine
