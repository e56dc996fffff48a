#include "dmot/persistence.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace dmot {

namespace {

class Writer {
 public:
  void u8(uint8_t v) { out_.push_back(v); }
  void u16(uint16_t v) { le(v, 2); }
  void u32(uint32_t v) { le(v, 4); }
  void i32(int32_t v) { le(static_cast<uint32_t>(v), 4); }
  void u64(uint64_t v) { le(v, 8); }
  void f64(double v) { le(std::bit_cast<uint64_t>(v), 8); }
  void count(size_t v) { u32(static_cast<uint32_t>(v)); }
  void i32s(const std::vector<int32_t>& v) {
    count(v.size());
    for (int32_t x : v) i32(x);
  }
  void u64s(const std::vector<uint64_t>& v) {
    count(v.size());
    for (uint64_t x : v) u64(x);
  }
  std::vector<uint8_t>& bytes() { return out_; }

 private:
  void le(uint64_t v, int width) {
    for (int b = 0; b < width; ++b) out_.push_back(static_cast<uint8_t>(v >> (8 * b)));
  }
  std::vector<uint8_t> out_;
};

class Reader {
 public:
  Reader(const uint8_t* data, size_t size) : p_(data), end_(data + size) {}
  uint8_t u8() { return static_cast<uint8_t>(le(1)); }
  uint16_t u16() { return static_cast<uint16_t>(le(2)); }
  uint32_t u32() { return static_cast<uint32_t>(le(4)); }
  int32_t i32() { return static_cast<int32_t>(static_cast<uint32_t>(le(4))); }
  uint64_t u64() { return le(8); }
  double f64() { return std::bit_cast<double>(le(8)); }
  // Element count, rejected when it cannot fit in the remaining bytes.
  size_t count(size_t min_width) {
    size_t c = u32();
    if (c * min_width > static_cast<size_t>(end_ - p_)) throw Error(ErrorCode::Truncated, "count");
    return c;
  }
  std::vector<int32_t> i32s() {
    std::vector<int32_t> v(count(4));
    for (auto& x : v) x = i32();
    return v;
  }
  std::vector<uint64_t> u64s() {
    std::vector<uint64_t> v(count(8));
    for (auto& x : v) x = u64();
    return v;
  }
  bool done() const { return p_ == end_; }

 private:
  uint64_t le(int width) {
    if (end_ - p_ < width) throw Error(ErrorCode::Truncated, "unexpected end of data");
    uint64_t v = 0;
    for (int b = 0; b < width; ++b) v |= static_cast<uint64_t>(p_[b]) << (8 * b);
    p_ += width;
    return v;
  }
  const uint8_t* p_;
  const uint8_t* end_;
};

void bad(const char* what) { throw Error(ErrorCode::BadInput, what); }

void write_payload(Writer& w, const Structure& s) {
  const CompressedTree& t = s.tree;
  const PartitionConfig& c = t.config;
  // config block
  w.f64(c.tau);
  w.i32(c.eta);
  w.f64(c.r0);
  w.u8(c.epsilon ? 1 : 0);
  w.f64(c.epsilon.value_or(0.0));
  w.f64(s.fl ? s.fl->eps0 : 0.0);
  w.u64(t.hash_seed);
  w.u64(s.rng_seed);
  w.i32(t.n);
  w.i32(t.root);
  // retained levels with their radii
  w.count(t.levels.size());
  for (Level j : t.levels) {
    w.i32(j);
    w.f64(t.radius(j));
  }
  // nodes
  w.count(t.nodes.size());
  for (const auto& x : t.nodes) {
    w.i32(x.level);
    w.i32(x.parent);
    w.i32(x.point);
    w.i32(x.leaf_count);
    w.i32(x.subtree_nodes);
    w.i32(x.leaf_begin);
    w.i32s(x.children);
  }
  w.count(t.meetings.size());
  for (const auto& m : t.meetings) {
    w.i32(m.a);
    w.i32(m.b);
    w.i32(m.level);
  }
  w.i32s(t.leaf_of);
  w.i32s(t.inorder);
  // responsibility dictionaries as sorted (partner, meeting) lists
  for (NodeId x = 0; x < t.node_count(); ++x) {
    std::vector<std::pair<NodeId, int32_t>> r(t.responsibility(x).begin(), t.responsibility(x).end());
    std::sort(r.begin(), r.end());
    w.count(r.size());
    for (auto [p, i] : r) {
      w.i32(p);
      w.i32(i);
    }
  }
  // LCA tables
  w.i32s(t.euler);
  w.i32s(t.depth);
  w.i32s(t.first);
  // path decomposition
  const PathNav& nav = s.nav;
  w.i32(nav.x_);
  w.count(nav.paths_.size());
  for (const auto& p : nav.paths_) {
    w.i32s(p.vertices);
    w.i32(p.depth);
    w.i32(p.parent_path);
    w.i32(p.skip);
  }
  w.i32s(nav.interior_path_);
  for (const auto& segs : nav.paths_of_) {
    w.count(segs.size());
    for (const auto& sg : segs) {
      w.i32(sg.path);
      w.i32(sg.entry);
    }
  }
  w.count(nav.path_meetings_.size());
  for (const auto& pm : nav.path_meetings_) {
    w.i32(pm.a);
    w.i32(pm.b);
    w.i32(pm.level);
  }
  w.i32s(nav.meeting_levels_);
  // trie contents
  for (const auto& keys : nav.level_keys_) w.u64s(keys);
  for (const auto& keys : nav.meeting_keys_) w.u64s(keys);
  // facility-location block
  if (s.fl) {
    const FLIndex& f = *s.fl;
    w.i32(f.root_low);
    w.f64(f.root_low_cost);
    w.i32(f.root_level);
    w.count(f.F.size());
    for (const auto& list : f.F) {
      w.count(list.size());
      for (const auto& e : list) {
        w.i32(e.level);
        w.i32(e.low);
        w.f64(e.cost);
      }
    }
  }
}

void check_id(int32_t v, size_t bound, bool allow_none = false) {
  if (allow_none && v == -1) return;
  if (v < 0 || static_cast<size_t>(v) >= bound) bad("index out of range");
}

void read_payload(Reader& r, Structure& s, bool has_fl) {
  CompressedTree& t = s.tree;
  PartitionConfig& c = t.config;
  c.tau = r.f64();
  c.eta = r.i32();
  c.r0 = r.f64();
  bool has_eps = r.u8() != 0;
  double eps = r.f64();
  if (has_eps) c.epsilon = eps;
  double eps0 = r.f64();
  t.hash_seed = r.u64();
  s.rng_seed = r.u64();
  t.n = r.i32();
  t.root = r.i32();
  if (!c.admissible() || !(c.r0 > 0.0) || t.n < 1) bad("config block");

  size_t levels = r.count(12);
  t.levels.resize(levels);
  for (auto& j : t.levels) {
    j = r.i32();
    if (r.f64() != t.radius(j)) bad("level radius");
  }
  size_t count = r.count(28);
  t.nodes.resize(count);
  check_id(t.root, count);
  for (auto& x : t.nodes) {
    x.level = r.i32();
    x.parent = r.i32();
    x.point = r.i32();
    x.leaf_count = r.i32();
    x.subtree_nodes = r.i32();
    x.leaf_begin = r.i32();
    x.children = r.i32s();
    check_id(x.parent, count, true);
    check_id(x.point, t.n, true);
    check_id(x.leaf_begin, t.n);
    for (NodeId ch : x.children) check_id(ch, count);
  }
  t.meetings.resize(r.count(12));
  for (auto& m : t.meetings) {
    m.a = r.i32();
    m.b = r.i32();
    m.level = r.i32();
    check_id(m.a, count);
    check_id(m.b, count);
  }
  t.leaf_of = r.i32s();
  t.inorder = r.i32s();
  if (t.leaf_of.size() != static_cast<size_t>(t.n) || t.inorder.size() != static_cast<size_t>(t.n))
    bad("leaf tables");
  for (NodeId v : t.leaf_of) check_id(v, count);
  for (PointId p : t.inorder) check_id(p, t.n);
  std::vector<std::vector<std::pair<NodeId, int32_t>>> resp(count);
  for (auto& list : resp) {
    list.resize(r.count(8));
    for (auto& [p, i] : list) {
      p = r.i32();
      i = r.i32();
    }
  }
  t.euler = r.i32s();
  t.depth = r.i32s();
  t.first = r.i32s();
  if (t.depth.size() != t.euler.size() || t.first.size() != count) bad("LCA tables");
  for (NodeId v : t.euler) check_id(v, count);
  for (int32_t f : t.first) check_id(f, t.euler.size());

  PathNav& nav = s.nav;
  nav.x_ = r.i32();
  nav.paths_.resize(r.count(16));
  for (auto& p : nav.paths_) {
    p.vertices = r.i32s();
    p.depth = r.i32();
    p.parent_path = r.i32();
    p.skip = r.i32();
    for (NodeId v : p.vertices) check_id(v, count);
  }
  size_t npaths = nav.paths_.size();
  for (auto& p : nav.paths_) {
    check_id(p.parent_path, npaths, true);
    check_id(p.skip, npaths, true);
  }
  nav.interior_path_ = r.i32s();
  if (nav.interior_path_.size() != count) bad("interior paths");
  for (int32_t p : nav.interior_path_) check_id(p, npaths, true);
  nav.paths_of_.assign(count, {});
  for (auto& segs : nav.paths_of_) {
    segs.resize(r.count(8));
    for (auto& sg : segs) {
      sg.path = r.i32();
      sg.entry = r.i32();
      check_id(sg.path, npaths);
    }
  }
  nav.path_meetings_.resize(r.count(12));
  for (auto& pm : nav.path_meetings_) {
    pm.a = r.i32();
    pm.b = r.i32();
    pm.level = r.i32();
    check_id(pm.a, npaths);
    check_id(pm.b, npaths);
  }
  nav.meeting_levels_ = r.i32s();
  nav.level_keys_.assign(npaths, {});
  for (auto& keys : nav.level_keys_) keys = r.u64s();
  nav.meeting_keys_.assign(npaths, {});
  for (auto& keys : nav.meeting_keys_) keys = r.u64s();

  if (has_fl) {
    FLIndex f;
    f.eps0 = eps0;
    f.root_low = r.i32();
    f.root_low_cost = r.f64();
    f.root_level = r.i32();
    check_id(f.root_low, t.n);
    f.F.resize(r.count(4));
    if (f.F.size() != static_cast<size_t>(t.n)) bad("FL lists");
    for (auto& list : f.F) {
      list.resize(r.count(16));
      for (auto& e : list) {
        e.level = r.i32();
        e.low = r.i32();
        e.cost = r.f64();
        check_id(e.low, t.n);
      }
    }
    s.fl = std::move(f);
  }
  if (!r.done()) bad("trailing payload bytes");

  t.finalize(false);
  nav.derive(t);
  // The stored dictionaries must agree with the ones rebuilt from the lists.
  for (NodeId x = 0; x < static_cast<NodeId>(count); ++x) {
    std::vector<std::pair<NodeId, int32_t>> got(t.responsibility(x).begin(), t.responsibility(x).end());
    std::sort(got.begin(), got.end());
    if (got != resp[x]) bad("responsibility dictionary");
  }
}

}  // namespace

uint64_t fnv1a64(const uint8_t* data, size_t size) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (size_t i = 0; i < size; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<uint8_t> serialize(const Structure& s) {
  Writer payload;
  write_payload(payload, s);
  const auto& body = payload.bytes();
  Writer w;
  for (char ch : std::string("DMOT")) w.u8(static_cast<uint8_t>(ch));
  w.u16(kFormatVersion);
  w.u16(s.fl ? kFlagFLIndex : 0);
  w.u64(body.size());
  auto& out = w.bytes();
  out.insert(out.end(), body.begin(), body.end());
  w.u64(fnv1a64(body.data(), body.size()));
  return std::move(out);
}

std::unique_ptr<Structure> deserialize(const std::vector<uint8_t>& bytes) {
  constexpr size_t kHeader = 4 + 2 + 2 + 8;
  if (bytes.size() < 4) throw Error(ErrorCode::Truncated, "missing header");
  if (std::memcmp(bytes.data(), "DMOT", 4) != 0) throw Error(ErrorCode::BadInput, "not a structure file");
  if (bytes.size() < kHeader) throw Error(ErrorCode::Truncated, "missing header");
  Reader head(bytes.data() + 4, kHeader - 4);
  uint16_t version = head.u16();
  uint16_t flags = head.u16();
  uint64_t length = head.u64();
  if (version != kFormatVersion)
    throw Error(ErrorCode::VersionUnsupported, "format version " + std::to_string(version));
  if (flags & ~kFlagFLIndex) throw Error(ErrorCode::VersionUnsupported, "unknown flags");
  if (bytes.size() - kHeader < 8 || length > bytes.size() - kHeader - 8)
    throw Error(ErrorCode::Truncated, "payload shorter than declared");
  if (length != bytes.size() - kHeader - 8) throw Error(ErrorCode::BadInput, "trailing bytes");
  const uint8_t* body = bytes.data() + kHeader;
  Reader tail(body + length, 8);
  if (tail.u64() != fnv1a64(body, length)) throw Error(ErrorCode::ChecksumMismatch, "payload checksum");
  auto s = std::make_unique<Structure>();
  Reader r(body, length);
  read_payload(r, *s, flags & kFlagFLIndex);
  return s;
}

void save(const Structure& s, const std::string& path) {
  auto bytes = serialize(s);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

std::unique_ptr<Structure> load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed: " + path);
  return deserialize(bytes);
}

size_t serialized_entry_count(const Structure& s) {
  const CompressedTree& t = s.tree;
  const PathNav& nav = s.nav;
  size_t total = t.levels.size() + t.meetings.size() + t.leaf_of.size() + t.inorder.size() +
                 t.euler.size() + t.depth.size() + t.first.size();
  for (const auto& x : t.nodes) total += 1 + x.children.size();
  for (NodeId x = 0; x < t.node_count(); ++x) total += t.responsibility(x).size();
  for (const auto& p : nav.paths_) total += 1 + p.vertices.size();
  total += nav.interior_path_.size() + nav.path_meetings_.size() + nav.meeting_levels_.size();
  for (const auto& segs : nav.paths_of_) total += segs.size();
  for (const auto& k : nav.level_keys_) total += k.size();
  for (const auto& k : nav.meeting_keys_) total += k.size();
  if (s.fl)
    for (const auto& list : s.fl->F) total += list.size();
  return total;
}

}  // namespace dmot
