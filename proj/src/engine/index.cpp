#include "graphjoin/engine/index.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <unordered_map>

#include <fmt/format.h>

namespace graphjoin::engine {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
constexpr char kMagic[4] = {'G', 'J', 'I', 'X'};

void fnv_mix(std::uint64_t& h, const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
}

struct CountingLess {
  std::uint64_t* comparisons;
  bool operator()(std::uint64_t a, std::uint64_t b) const {
    ++*comparisons;
    return a < b;
  }
};

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

  template <class T>
  void put(T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * i)));
    }
  }
  void put_string(const std::string& s) {
    put<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void put_bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + size);
  }
  std::size_t size() const { return out_.size(); }
  void patch_u64(std::size_t at, std::uint64_t value) {
    for (std::size_t i = 0; i < 8; ++i) out_[at + i] = static_cast<std::uint8_t>(value >> (8 * i));
  }

 private:
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  template <class T>
  T get() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  std::string get_string() {
    const auto n = get<std::uint32_t>();
    need(n);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  void get_bytes(void* out, std::size_t n) {
    need(n);
    std::memcpy(out, in_.data() + pos_, n);
    pos_ += n;
  }
  std::size_t position() const { return pos_; }
  bool at_end() const { return pos_ == in_.size(); }
  /// Guards count fields against absurd values before reserving.
  void plausible(std::uint64_t count, std::size_t min_bytes_each) const {
    if (min_bytes_each != 0 && count > (in_.size() - pos_) / min_bytes_each) {
      throw Error(ErrorCode::kFormat, "index file count exceeds remaining bytes");
    }
  }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw Error(ErrorCode::kFormat, "index file truncated");
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t key_hash(std::span<const AttributeValue> key, HashMode mode) {
  if (mode == HashMode::kConstant) return 0;
  std::uint64_t h = kFnvOffset;
  for (const AttributeValue& value : key) {
    const std::uint64_t n = value.text().size();
    unsigned char len[8];
    for (int i = 0; i < 8; ++i) len[i] = static_cast<unsigned char>(n >> (8 * i));
    fnv_mix(h, len, sizeof len);
    fnv_mix(h, value.text().data(), value.text().size());
  }
  return h;
}

LoadedOperand load(const GraphView& graph, std::vector<std::string> key_attributes,
                   HashMode mode) {
  if (key_attributes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "engine load needs at least one key attribute");
  }
  const GraphDatabase& db = graph.database();
  LoadedOperand out;
  out.component = graph.id();
  out.hash_mode = mode;

  struct Keyed {
    std::uint64_t hash;
    std::vector<AttributeValue> key;
    std::uint64_t replica;
  };
  std::unordered_map<ElementId, Keyed> keyed;
  keyed.reserve(graph.vertices().size());
  std::map<std::uint64_t, std::vector<LoadedVertex>, CountingLess> map_x(
      CountingLess{&out.stats.map_comparisons});
  // Map nodes never move, so a bucket pointer stays valid while inserting.
  std::unordered_map<ElementId, std::pair<std::vector<LoadedVertex>*, std::size_t>> slot;
  slot.reserve(graph.vertices().size());

  for (ElementId v : graph.vertices()) {
    const Tuple payload = db.payload(v);
    std::vector<AttributeValue> key;
    key.reserve(key_attributes.size());
    bool complete = true;
    for (const auto& attribute : key_attributes) {
      const AttributeValue* value = payload.find(attribute);
      if (value == nullptr) {
        complete = false;
        break;
      }
      key.push_back(*value);
    }
    if (!complete) {
      ++out.stats.vertices_skipped;
      continue;
    }
    const std::uint64_t h = key_hash(key, mode);
    auto& bucket = map_x[h];
    slot.emplace(v, std::pair{&bucket, bucket.size()});
    bucket.push_back(LoadedVertex{v, db.replica(v), key, {}});
    keyed.emplace(v, Keyed{h, std::move(key), db.replica(v)});
    ++out.stats.vertices;
  }

  for (ElementId e : graph.edges()) {
    const Endpoints ends = db.endpoints(e);
    auto source = slot.find(ends.source);
    auto target = keyed.find(ends.target);
    if (source == slot.end() || target == keyed.end()) {
      ++out.stats.edges_skipped;
      continue;
    }
    (*source->second.first)[source->second.second].out.push_back(OutEdge{target->second.hash, ends.target, e});
    ++out.stats.edges;
  }

  for (auto& [h, bucket] : map_x) {
    for (LoadedVertex& lv : bucket) {
      std::sort(lv.out.begin(), lv.out.end(), [&](const OutEdge& x, const OutEdge& y) {
        if (x.target_hash != y.target_hash) return x.target_hash < y.target_hash;
        const Keyed& kx = keyed.at(x.target);
        const Keyed& ky = keyed.at(y.target);
        if (kx.key != ky.key) return kx.key < ky.key;
        if (kx.replica != ky.replica) return kx.replica < ky.replica;
        if (x.target != y.target) return x.target < y.target;
        return x.edge < y.edge;
      });
    }
  }

  out.key_attributes = std::move(key_attributes);
  out.buckets.reserve(map_x.size());
  for (auto& [h, bucket] : map_x) out.buckets.emplace_back(h, std::move(bucket));
  return out;
}

EngineIndex build_index(const LoadedOperand& loaded) {
  EngineIndex index;
  index.component = loaded.component;
  index.hash_mode = loaded.hash_mode;
  index.key_attributes = loaded.key_attributes;
  index.hash_offset.reserve(loaded.buckets.size());
  index.vertex_vals.reserve(loaded.stats.vertices);
  for (const auto& [h, bucket] : loaded.buckets) {
    index.hash_offset.push_back(BucketEntry{h, index.vertex_vals.size(), bucket.size()});
    for (const LoadedVertex& lv : bucket) {
      index.vertex_vals.push_back(VertexRecord{lv.vertex, lv.replica, lv.key, lv.out});
    }
  }
  return index;
}

IndexStats EngineIndex::stats() const {
  IndexStats s;
  s.buckets = hash_offset.size();
  s.vertices = vertex_vals.size();
  s.per_bucket.reserve(hash_offset.size());
  for (std::size_t p = 0; p < hash_offset.size(); ++p) {
    BucketStats b{hash_offset[p].hash, hash_offset[p].length, 0};
    for (const VertexRecord& r : bucket(p)) b.out_edges += r.out.size();
    s.edges += b.out_edges;
    s.per_bucket.push_back(b);
  }
  return s;
}

std::span<const VertexRecord> EngineIndex::bucket(std::size_t directory_position) const {
  const BucketEntry& entry = hash_offset.at(directory_position);
  return std::span<const VertexRecord>(vertex_vals).subspan(entry.offset, entry.length);
}

std::vector<std::uint8_t> EngineIndex::serialize() const {
  std::vector<std::uint8_t> bytes;
  Writer w(bytes);
  w.put_bytes(kMagic, sizeof kMagic);
  w.put<std::uint16_t>(kIndexFormatVersion);
  w.put<std::uint64_t>(hash_offset.size());
  for (const BucketEntry& b : hash_offset) {
    w.put<std::uint64_t>(b.hash);
    w.put<std::uint64_t>(b.offset);
    w.put<std::uint64_t>(b.length);
  }
  w.put<std::uint64_t>(vertex_vals.size());
  for (const VertexRecord& r : vertex_vals) {
    const std::size_t length_at = w.size();
    w.put<std::uint64_t>(0);
    w.put<std::uint32_t>(r.vertex.value);
    w.put<std::uint64_t>(r.replica);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(r.key.size()));
    for (const AttributeValue& v : r.key) w.put_string(v.text());
    w.put<std::uint32_t>(static_cast<std::uint32_t>(r.out.size()));
    for (const OutEdge& e : r.out) {
      w.put<std::uint64_t>(e.target_hash);
      w.put<std::uint32_t>(e.target.value);
      w.put<std::uint32_t>(e.edge.value);
    }
    w.patch_u64(length_at, w.size() - length_at - 8);
  }
  w.put<std::uint32_t>(component);
  w.put<std::uint8_t>(static_cast<std::uint8_t>(hash_mode));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(key_attributes.size()));
  for (const auto& a : key_attributes) w.put_string(a);
  return bytes;
}

EngineIndex EngineIndex::deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  char magic[4];
  r.get_bytes(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw Error(ErrorCode::kFormat, "not a GJIX index file");
  }
  const auto version = r.get<std::uint16_t>();
  if (version != kIndexFormatVersion) {
    throw Error(ErrorCode::kFormat, fmt::format("unsupported index version {}", version));
  }
  EngineIndex index;
  const auto buckets = r.get<std::uint64_t>();
  r.plausible(buckets, 24);
  index.hash_offset.reserve(buckets);
  for (std::uint64_t i = 0; i < buckets; ++i) {
    BucketEntry b;
    b.hash = r.get<std::uint64_t>();
    b.offset = r.get<std::uint64_t>();
    b.length = r.get<std::uint64_t>();
    index.hash_offset.push_back(b);
  }
  const auto records = r.get<std::uint64_t>();
  r.plausible(records, 28);
  index.vertex_vals.reserve(records);
  for (std::uint64_t i = 0; i < records; ++i) {
    const auto length = r.get<std::uint64_t>();
    const std::size_t start = r.position();
    VertexRecord rec;
    rec.vertex = ElementId{r.get<std::uint32_t>()};
    rec.replica = r.get<std::uint64_t>();
    const auto keys = r.get<std::uint32_t>();
    r.plausible(keys, 4);
    for (std::uint32_t k = 0; k < keys; ++k) rec.key.emplace_back(r.get_string());
    const auto outs = r.get<std::uint32_t>();
    r.plausible(outs, 16);
    rec.out.reserve(outs);
    for (std::uint32_t k = 0; k < outs; ++k) {
      OutEdge e;
      e.target_hash = r.get<std::uint64_t>();
      e.target = ElementId{r.get<std::uint32_t>()};
      e.edge = ElementId{r.get<std::uint32_t>()};
      rec.out.push_back(e);
    }
    if (r.position() - start != length) {
      throw Error(ErrorCode::kFormat, fmt::format("record {} length mismatch", i));
    }
    index.vertex_vals.push_back(std::move(rec));
  }
  index.component = r.get<std::uint32_t>();
  const auto mode = r.get<std::uint8_t>();
  if (mode > static_cast<std::uint8_t>(HashMode::kConstant)) {
    throw Error(ErrorCode::kFormat, "unknown hash mode");
  }
  index.hash_mode = static_cast<HashMode>(mode);
  const auto attributes = r.get<std::uint32_t>();
  r.plausible(attributes, 4);
  for (std::uint32_t k = 0; k < attributes; ++k) index.key_attributes.push_back(r.get_string());
  if (!r.at_end()) throw Error(ErrorCode::kFormat, "trailing bytes after index");

  std::uint64_t expected_offset = 0;
  for (const BucketEntry& b : index.hash_offset) {
    if (b.offset != expected_offset || b.offset + b.length > index.vertex_vals.size()) {
      throw Error(ErrorCode::kFormat, "bucket directory does not partition the records");
    }
    expected_offset += b.length;
  }
  if (expected_offset != index.vertex_vals.size()) {
    throw Error(ErrorCode::kFormat, "bucket directory does not cover every record");
  }
  return index;
}

void EngineIndex::write(const std::string& path) const {
  const auto bytes = serialize();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot open {} for writing", path));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, fmt::format("write to {} failed", path));
}

EngineIndex EngineIndex::read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path));
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace graphjoin::engine
