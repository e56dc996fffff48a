#include "dmot/yfast.hpp"

#include <bit>
#include <sstream>

namespace dmot {

YFastTrie::YFastTrie(int universe_bits, uint64_t seed)
    : bits_(universe_bits), hash_{seed}, xnodes_(0, hash_), buckets_(0, hash_) {
  if (bits_ < 1 || bits_ > 62) {
    throw Error(ErrorCode::KeyOutOfUniverse, "universe bits must be in [1,62]");
  }
}

int YFastTrie::bits_for(uint64_t max_key) {
  int b = max_key == 0 ? 1 : 64 - std::countl_zero(max_key);
  return b;
}

void YFastTrie::check_key(uint64_t key) const {
  if (key >> bits_) {
    throw Error(ErrorCode::KeyOutOfUniverse,
                std::to_string(key) + " >= 2^" + std::to_string(bits_));
  }
}

std::optional<uint64_t> YFastTrie::rep_pred(uint64_t q) const {
  if (xnodes_.empty()) return std::nullopt;
  // Longest stored prefix of q.
  int lo = 0, hi = bits_;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (xnodes_.count(code(mid, q))) lo = mid;
    else hi = mid - 1;
  }
  if (lo == bits_) return q;
  const XNode& node = xnodes_.at(code(lo, q));
  uint64_t bit = (q >> (bits_ - lo - 1)) & 1;
  if (bit == 1) return node.max;  // only the 0-subtree exists: all below q
  const XNode& leaf = xnodes_.at(code(bits_, node.min));
  if (!leaf.has_prev) return std::nullopt;
  return leaf.prev;
}

std::optional<uint64_t> YFastTrie::rep_succ_strict(uint64_t rep) const {
  const XNode& leaf = xnodes_.at(code(bits_, rep));
  if (!leaf.has_next) return std::nullopt;
  return leaf.next;
}

void YFastTrie::x_insert(uint64_t rep) {
  std::optional<uint64_t> prev = rep_pred(rep);
  std::optional<uint64_t> next;
  if (prev) next = rep_succ_strict(*prev);
  else if (!xnodes_.empty()) next = xnodes_.at(code(0, 0)).min;
  for (int l = 0; l <= bits_; ++l) {
    auto [it, fresh] = xnodes_.try_emplace(code(l, rep));
    if (fresh) {
      it->second.min = it->second.max = rep;
    } else {
      it->second.min = std::min(it->second.min, rep);
      it->second.max = std::max(it->second.max, rep);
    }
  }
  XNode& leaf = xnodes_.at(code(bits_, rep));
  leaf.has_prev = prev.has_value();
  leaf.prev = prev.value_or(0);
  leaf.has_next = next.has_value();
  leaf.next = next.value_or(0);
  if (prev) {
    XNode& p = xnodes_.at(code(bits_, *prev));
    p.has_next = true;
    p.next = rep;
  }
  if (next) {
    XNode& s = xnodes_.at(code(bits_, *next));
    s.has_prev = true;
    s.prev = rep;
  }
}

void YFastTrie::x_erase(uint64_t rep) {
  XNode leaf = xnodes_.at(code(bits_, rep));
  if (leaf.has_prev) {
    XNode& p = xnodes_.at(code(bits_, leaf.prev));
    p.has_next = leaf.has_next;
    p.next = leaf.next;
  }
  if (leaf.has_next) {
    XNode& s = xnodes_.at(code(bits_, leaf.next));
    s.has_prev = leaf.has_prev;
    s.prev = leaf.prev;
  }
  for (int l = bits_; l >= 0; --l) {
    auto it = xnodes_.find(code(l, rep));
    XNode& n = it->second;
    if (n.min == rep && n.max == rep) {
      xnodes_.erase(it);
      continue;
    }
    if (n.min == rep) n.min = leaf.next;
    if (n.max == rep) n.max = leaf.prev;
  }
}

void YFastTrie::rebalance(uint64_t rep) {
  auto& keys = buckets_.at(rep);
  size_t cap = 2 * static_cast<size_t>(bits_);
  if (keys.size() > cap) {
    auto mid = keys.begin();
    std::advance(mid, keys.size() / 2);
    std::set<uint64_t> upper(mid, keys.end());
    keys.erase(mid, keys.end());
    uint64_t upper_rep = *upper.begin();
    buckets_.emplace(upper_rep, std::move(upper));
    x_insert(upper_rep);
    return;
  }
  if (keys.size() < static_cast<size_t>(bits_) / 2 && buckets_.size() > 1) {
    uint64_t low, high;
    if (auto nxt = rep_succ_strict(rep)) {
      low = rep;
      high = *nxt;
    } else {
      low = xnodes_.at(code(bits_, rep)).prev;
      high = rep;
    }
    auto& dst = buckets_.at(low);
    auto& src = buckets_.at(high);
    dst.insert(src.begin(), src.end());
    buckets_.erase(high);
    x_erase(high);
    if (dst.size() > cap) rebalance(low);
  }
}

void YFastTrie::insert(uint64_t key) {
  check_key(key);
  if (buckets_.empty()) {
    buckets_[key].insert(key);
    x_insert(key);
    size_ = 1;
    return;
  }
  std::optional<uint64_t> r = rep_pred(key);
  uint64_t rep = r ? *r : xnodes_.at(code(0, 0)).min;
  auto& keys = buckets_.at(rep);
  if (!keys.insert(key).second) return;
  ++size_;
  if (key < rep) {
    std::set<uint64_t> moved = std::move(keys);
    buckets_.erase(rep);
    x_erase(rep);
    buckets_.emplace(key, std::move(moved));
    x_insert(key);
    rep = key;
  }
  rebalance(rep);
}

void YFastTrie::erase(uint64_t key) {
  if (key >> bits_) return;
  std::optional<uint64_t> r = rep_pred(key);
  if (!r) return;
  uint64_t rep = *r;
  auto& keys = buckets_.at(rep);
  if (!keys.erase(key)) return;
  --size_;
  if (keys.empty()) {
    buckets_.erase(rep);
    x_erase(rep);
    return;
  }
  if (key == rep) {
    uint64_t fresh = *keys.begin();
    std::set<uint64_t> moved = std::move(keys);
    buckets_.erase(rep);
    x_erase(rep);
    buckets_.emplace(fresh, std::move(moved));
    x_insert(fresh);
    rep = fresh;
  }
  rebalance(rep);
}

bool YFastTrie::contains(uint64_t key) const {
  if (key >> bits_) return false;
  auto r = rep_pred(key);
  return r && buckets_.at(*r).count(key);
}

std::optional<uint64_t> YFastTrie::predecessor(uint64_t q) const {
  if (q >> bits_) q = (uint64_t{1} << bits_) - 1;
  auto r = rep_pred(q);
  if (!r) return std::nullopt;
  const auto& keys = buckets_.at(*r);
  auto it = keys.upper_bound(q);
  return *std::prev(it);
}

std::optional<uint64_t> YFastTrie::successor(uint64_t q) const {
  if (buckets_.empty() || (q >> bits_)) return std::nullopt;
  auto r = rep_pred(q);
  if (!r) return xnodes_.at(code(0, 0)).min;
  const auto& keys = buckets_.at(*r);
  auto it = keys.lower_bound(q);
  if (it != keys.end()) return *it;
  return rep_succ_strict(*r);
}

std::vector<uint64_t> YFastTrie::keys() const {
  std::vector<uint64_t> out;
  out.reserve(size_);
  if (buckets_.empty()) return out;
  std::optional<uint64_t> rep = xnodes_.at(code(0, 0)).min;
  while (rep) {
    const auto& b = buckets_.at(*rep);
    out.insert(out.end(), b.begin(), b.end());
    rep = rep_succ_strict(*rep);
  }
  return out;
}

std::string YFastTrie::validate() const {
  std::ostringstream err;
  std::set<uint64_t> reps;
  for (const auto& [rep, keys] : buckets_) {
    reps.insert(rep);
    if (keys.empty() || *keys.begin() != rep) err << "bucket " << rep << " rep is not its minimum; ";
  }
  size_t total = 0;
  auto rit = reps.begin();
  for (; rit != reps.end(); ++rit) {
    const auto& keys = buckets_.at(*rit);
    total += keys.size();
    auto nxt = std::next(rit);
    if (nxt != reps.end() && *keys.rbegin() >= *nxt) err << "bucket " << *rit << " overlaps next; ";
    if (keys.size() > 2 * static_cast<size_t>(bits_)) err << "bucket " << *rit << " too large; ";
    if (reps.size() > 1 && keys.size() < static_cast<size_t>(bits_) / 2) {
      err << "bucket " << *rit << " too small; ";
    }
    for (int l = 0; l <= bits_; ++l) {
      if (!xnodes_.count(code(l, *rit))) err << "missing prefix of " << *rit << "; ";
    }
    const XNode& leaf = xnodes_.at(code(bits_, *rit));
    if (leaf.has_next != (nxt != reps.end()) || (leaf.has_next && leaf.next != *nxt)) {
      err << "bad next link at " << *rit << "; ";
    }
  }
  if (total != size_) err << "size mismatch; ";
  for (const auto& [c, node] : xnodes_) {
    int level = 63 - std::countl_zero(c);
    uint64_t prefix = c ^ (uint64_t{1} << level);
    auto pre = [&](uint64_t k) { return level == 0 ? 0 : k >> (bits_ - level); };
    if (!reps.count(node.min) || !reps.count(node.max) || pre(node.min) != prefix ||
        pre(node.max) != prefix) {
      err << "prefix node " << c << " not backed by representatives; ";
      continue;
    }
    auto lo = reps.lower_bound(node.min);
    if (lo != reps.begin() && pre(*std::prev(lo)) == prefix) err << "stale min at " << c << "; ";
    auto hi = reps.upper_bound(node.max);
    if (hi != reps.end() && pre(*hi) == prefix) err << "stale max at " << c << "; ";
  }
  return err.str();
}

}  // namespace dmot
