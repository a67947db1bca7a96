#include "ymsym/atom.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace ymsym {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

struct AtomHash {
  std::size_t operator()(const AtomData& d) const {
    std::size_t h = static_cast<std::size_t>(d.kind);
    h = hash_combine(h, d.mu);
    h = hash_combine(h, d.a);
    for (auto x : d.derivs) h = hash_combine(h, x);
    h = hash_combine(h, std::hash<std::string>{}(d.name));
    for (auto x : d.upper) h = hash_combine(h, 0x100u + x);
    for (auto x : d.lower) h = hash_combine(h, 0x200u + x);
    for (auto x : d.xderivs) h = hash_combine(h, 0x300u + x);
    for (auto [a, nu] : d.aderivs) h = hash_combine(h, 0x400u + (a << 4) + nu);
    h = hash_combine(h, d.field_dependent ? 1u : 2u);
    return h;
  }
};

// Append-only arena with stable addresses: fixed-size chunks behind a
// pre-sized pointer table, so readers never take the lock. New ids are
// published with release semantics after the slot is fully written.
class Registry {
public:
  static constexpr std::size_t kChunkBits = 12;
  static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
  static constexpr std::size_t kMaxChunks = 1 << 14; // ~67M atoms, plenty

  Registry() : m_chunks(kMaxChunks) {}

  AtomId intern(const AtomData& data) {
    std::lock_guard<std::mutex> lock(m_mutex);
    auto it = m_index.find(data);
    if (it != m_index.end()) return it->second;
    const std::size_t id = m_count.load(std::memory_order_relaxed);
    const std::size_t chunk = id >> kChunkBits;
    if (chunk >= kMaxChunks) throw Error("atom registry exhausted");
    if (!m_chunks[chunk]) m_chunks[chunk] = std::make_unique<Chunk>();
    (*m_chunks[chunk])[id & (kChunkSize - 1)] = data;
    m_count.store(id + 1, std::memory_order_release);
    m_index.emplace(data, static_cast<AtomId>(id));
    return static_cast<AtomId>(id);
  }

  const AtomData& get(AtomId id) const {
    const auto uid = static_cast<std::size_t>(id);
    if (id < 0 || uid >= m_count.load(std::memory_order_acquire))
      throw DomainError("unknown atom id " + std::to_string(id));
    return (*m_chunks[uid >> kChunkBits])[uid & (kChunkSize - 1)];
  }

private:
  using Chunk = std::array<AtomData, kChunkSize>;
  std::mutex m_mutex;
  std::unordered_map<AtomData, AtomId, AtomHash> m_index;
  std::vector<std::unique_ptr<Chunk>> m_chunks;
  std::atomic<std::size_t> m_count{0};
};

Registry& registry() {
  static Registry* r = new Registry; // never destroyed; ids live for the process
  return *r;
}

void check_spacetime(int mu) {
  if (mu < 0 || mu > 3) throw DomainError("spacetime index " + std::to_string(mu) + " out of range 0..3");
}

} // namespace

AtomId intern(const AtomData& data) { return registry().intern(data); }
const AtomData& atom(AtomId id) { return registry().get(id); }

bool structurally_less(const AtomData& lhs, const AtomData& rhs) {
  if (lhs.kind != rhs.kind) return lhs.kind < rhs.kind;
  switch (lhs.kind) {
    case AtomKind::Coordinate:
      return lhs.mu < rhs.mu;
    case AtomKind::Jet: {
      auto key = [](const AtomData& d) { return std::tuple(d.a, d.mu, d.derivs.size()); };
      if (key(lhs) != key(rhs)) return key(lhs) < key(rhs);
      return lhs.derivs < rhs.derivs;
    }
    case AtomKind::Param:
      return lhs.name < rhs.name;
    case AtomKind::Formal: {
      auto key = [](const AtomData& d) {
        return std::tie(d.name, d.lower, d.upper, d.xderivs, d.aderivs);
      };
      return key(lhs) < key(rhs);
    }
  }
  return false; // unreachable
}

AtomId coordinate(int mu) {
  check_spacetime(mu);
  AtomData d;
  d.kind = AtomKind::Coordinate;
  d.mu = static_cast<std::uint8_t>(mu);
  return intern(d);
}

AtomId field(int a, int nu) { return jet(a, nu, {}); }

AtomId jet(int a, int nu, std::vector<std::uint8_t> derivs) {
  check_spacetime(nu);
  if (a < 0 || a > 0xFFFF) throw DomainError("algebra index out of range");
  for (auto l : derivs) check_spacetime(l);
  std::sort(derivs.begin(), derivs.end());
  AtomData d;
  d.kind = AtomKind::Jet;
  d.a = static_cast<std::uint16_t>(a);
  d.mu = static_cast<std::uint8_t>(nu);
  d.derivs = std::move(derivs);
  return intern(d);
}

AtomId jet_extend(AtomId base, int lambda) {
  check_spacetime(lambda);
  AtomData d = atom(base);
  if (d.kind != AtomKind::Jet) throw DomainError("jet_extend on a non-jet atom");
  d.derivs.insert(std::upper_bound(d.derivs.begin(), d.derivs.end(),
                                   static_cast<std::uint8_t>(lambda)),
                  static_cast<std::uint8_t>(lambda));
  return intern(d);
}

AtomId param(const std::string& name) {
  if (name.empty()) throw DomainError("parameter with empty name");
  AtomData d;
  d.kind = AtomKind::Param;
  d.name = name;
  return intern(d);
}

AtomId formal(const std::string& name, std::vector<std::uint8_t> upper,
              std::vector<std::uint8_t> lower, bool field_dependent) {
  if (name.empty()) throw DomainError("formal function with empty name");
  AtomData d;
  d.kind = AtomKind::Formal;
  d.name = name;
  d.upper = std::move(upper);
  d.lower = std::move(lower);
  d.field_dependent = field_dependent;
  return intern(d);
}

AtomId formal_dx(AtomId base, int mu) {
  check_spacetime(mu);
  AtomData d = atom(base);
  if (d.kind != AtomKind::Formal) throw DomainError("formal_dx on a non-formal atom");
  d.xderivs.insert(std::upper_bound(d.xderivs.begin(), d.xderivs.end(),
                                    static_cast<std::uint8_t>(mu)),
                   static_cast<std::uint8_t>(mu));
  return intern(d);
}

AtomId formal_dA(AtomId base, int a, int nu) {
  check_spacetime(nu);
  AtomData d = atom(base);
  if (d.kind != AtomKind::Formal) throw DomainError("formal_dA on a non-formal atom");
  if (!d.field_dependent)
    throw DomainError("formal_dA on a function of the coordinates only");
  FieldIndex fi{static_cast<std::uint16_t>(a), static_cast<std::uint8_t>(nu)};
  d.aderivs.insert(std::upper_bound(d.aderivs.begin(), d.aderivs.end(), fi), fi);
  return intern(d);
}

std::string atom_name(AtomId id) {
  const AtomData& d = atom(id);
  switch (d.kind) {
    case AtomKind::Coordinate:
      return "x" + std::to_string(d.mu);
    case AtomKind::Jet: {
      std::string s = "A[" + std::to_string(d.a) + "," + std::to_string(d.mu) + "]";
      for (auto l : d.derivs) s = "d(" + s + "," + std::to_string(l) + ")";
      return s;
    }
    case AtomKind::Param:
      return "p(" + d.name + ")";
    case AtomKind::Formal: {
      std::string s = d.name + "[";
      bool first = true;
      for (auto i : d.lower) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
      }
      for (auto i : d.upper) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
      }
      if (!d.xderivs.empty()) {
        s += ";x:";
        for (std::size_t i = 0; i < d.xderivs.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(d.xderivs[i]);
        }
      }
      if (!d.aderivs.empty()) {
        s += ";A:";
        for (std::size_t i = 0; i < d.aderivs.size(); ++i) {
          if (i) s += ",";
          s += "(" + std::to_string(d.aderivs[i].a) + "," + std::to_string(d.aderivs[i].nu) + ")";
        }
      }
      return s + "]";
    }
  }
  return "?";
}

} // namespace ymsym
