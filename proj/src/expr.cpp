#include "ymsym/expr.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace ymsym {

namespace {

struct VarsHash {
  std::size_t operator()(const std::vector<PackedVar>& vars) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : vars) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct VarsEq {
  bool operator()(const std::vector<PackedVar>& a, const std::vector<PackedVar>& b) const {
    return a == b;
  }
};

// Same stable-address arena pattern as the atom registry.
class MonoRegistry {
public:
  static constexpr std::size_t kChunkBits = 12;
  static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
  static constexpr std::size_t kMaxChunks = 1 << 15;

  MonoRegistry() : m_chunks(kMaxChunks) {
    intern({}); // id 0 is the empty monomial
  }

  MonoId intern(std::vector<PackedVar> vars) {
    std::lock_guard<std::mutex> lock(m_mutex);
    auto it = m_index.find(vars);
    if (it != m_index.end()) return it->second;
    const std::size_t id = m_count.load(std::memory_order_relaxed);
    const std::size_t chunk = id >> kChunkBits;
    if (chunk >= kMaxChunks) throw Error("monomial registry exhausted");
    if (!m_chunks[chunk]) m_chunks[chunk] = std::make_unique<Chunk>();
    MonoData& slot = (*m_chunks[chunk])[id & (kChunkSize - 1)];
    slot = classify(std::move(vars));
    m_count.store(id + 1, std::memory_order_release);
    m_index.emplace(slot.vars, static_cast<MonoId>(id));
    return static_cast<MonoId>(id);
  }

  const MonoData& get(MonoId id) const {
    const auto uid = static_cast<std::size_t>(id);
    if (id < 0 || uid >= m_count.load(std::memory_order_acquire))
      throw DomainError("unknown monomial id " + std::to_string(id));
    return (*m_chunks[uid >> kChunkBits])[uid & (kChunkSize - 1)];
  }

private:
  static MonoData classify(std::vector<PackedVar> vars) {
    MonoData d;
    d.vars = std::move(vars);
    for (auto v : d.vars) {
      const AtomId id = packed_atom(v);
      const int exp = packed_exp(v);
      d.degree += exp;
      const AtomData& a = atom(id);
      switch (a.kind) {
        case AtomKind::Jet:
          d.max_jet_order = std::max<std::uint8_t>(d.max_jet_order,
                                                   static_cast<std::uint8_t>(a.derivs.size()));
          if (a.derivs.empty()) d.has_field = true;
          else d.has_derivative_jet = true;
          break;
        case AtomKind::Formal:
          d.has_formal = true;
          d.formal_degree += exp;
          break;
        default:
          break;
      }
    }
    return d;
  }

  using Chunk = std::array<MonoData, kChunkSize>;
  std::mutex m_mutex;
  std::unordered_map<std::vector<PackedVar>, MonoId, VarsHash, VarsEq> m_index;
  std::vector<std::unique_ptr<Chunk>> m_chunks;
  std::atomic<std::size_t> m_count{0};
};

MonoRegistry& mono_registry() {
  static MonoRegistry* r = new MonoRegistry;
  return *r;
}

} // namespace

MonoId mono_intern(std::vector<PackedVar> vars) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (packed_exp(vars[i]) == 0) throw DomainError("monomial with zero exponent");
    if (i && packed_atom(vars[i - 1]) >= packed_atom(vars[i]))
      throw DomainError("monomial vars not strictly sorted by atom");
  }
  return mono_registry().intern(std::move(vars));
}

const MonoData& mono(MonoId id) { return mono_registry().get(id); }

MonoId mono_one() { return 0; }

MonoId mono_of_atom(AtomId id, int exp) {
  if (exp < 0 || exp > 255) throw DomainError("exponent out of range 0..255");
  if (exp == 0) return mono_one();
  atom(id); // validate
  return mono_intern({pack_var(id, exp)});
}

MonoId mono_mul(MonoId lhs, MonoId rhs) {
  if (lhs == 0) return rhs;
  if (rhs == 0) return lhs;
  const auto& a = mono(lhs).vars;
  const auto& b = mono(rhs).vars;
  std::vector<PackedVar> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const AtomId ai = packed_atom(a[i]), bj = packed_atom(b[j]);
    if (ai < bj) {
      out.push_back(a[i++]);
    } else if (bj < ai) {
      out.push_back(b[j++]);
    } else {
      const int e = packed_exp(a[i]) + packed_exp(b[j]);
      if (e > 255) throw DomainError("monomial exponent overflow");
      out.push_back(pack_var(ai, e));
      ++i, ++j;
    }
  }
  out.insert(out.end(), a.begin() + i, a.end());
  out.insert(out.end(), b.begin() + j, b.end());
  return mono_registry().intern(std::move(out));
}

MonoId mono_div_once(MonoId m, AtomId id) {
  const auto& vars = mono(m).vars;
  std::vector<PackedVar> out;
  out.reserve(vars.size());
  bool found = false;
  for (auto v : vars) {
    if (packed_atom(v) == id) {
      found = true;
      if (packed_exp(v) > 1) out.push_back(pack_var(id, packed_exp(v) - 1));
    } else {
      out.push_back(v);
    }
  }
  if (!found) throw DomainError("monomial not divisible by " + atom_name(id));
  return mono_registry().intern(std::move(out));
}

MonoId mono_without(MonoId m, AtomId id) {
  const auto& vars = mono(m).vars;
  std::vector<PackedVar> out;
  out.reserve(vars.size());
  for (auto v : vars)
    if (packed_atom(v) != id) out.push_back(v);
  if (out.size() == vars.size()) return m;
  return mono_registry().intern(std::move(out));
}

int mono_exponent(MonoId m, AtomId id) {
  for (auto v : mono(m).vars)
    if (packed_atom(v) == id) return packed_exp(v);
  return 0;
}

namespace {

// Factors in the structural atom order, independent of interning order.
std::vector<PackedVar> structural_vars(MonoId id) {
  std::vector<PackedVar> vars = mono(id).vars;
  std::sort(vars.begin(), vars.end(), [](PackedVar x, PackedVar y) {
    return structurally_less(atom(packed_atom(x)), atom(packed_atom(y)));
  });
  return vars;
}

}  // namespace

std::string mono_name(MonoId id) {
  const auto vars = structural_vars(id);
  if (vars.empty()) return "1";
  std::string s;
  for (auto v : vars) {
    const std::string nm = atom_name(packed_atom(v));
    for (int k = 0; k < packed_exp(v); ++k) {
      if (!s.empty()) s += "*";
      s += nm;
    }
  }
  return s;
}

bool mono_structurally_less(MonoId lhs, MonoId rhs) {
  if (lhs == rhs) return false;
  const auto a = structural_vars(lhs);
  const auto b = structural_vars(rhs);
  // Compare factor-by-factor in the structural atom order; a proper prefix
  // precedes its extensions, so 1 < x0 < x0*x0 < x0*x1 < x1, ...
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const AtomData& av = atom(packed_atom(a[i]));
    const AtomData& bv = atom(packed_atom(b[i]));
    if (structurally_less(av, bv)) return true;
    if (structurally_less(bv, av)) return false;
    if (packed_exp(a[i]) != packed_exp(b[i])) {
      // Same atom, different power: the smaller power is a prefix.
      return packed_exp(a[i]) < packed_exp(b[i]);
    }
  }
  return a.size() < b.size();
}

Expr::Expr(const Scalar& s) {
  if (!s.is_zero()) m_terms.push_back({mono_one(), s});
}

Expr Expr::from_atom(AtomId id, int exp) { return from_mono(mono_of_atom(id, exp)); }

Expr Expr::from_mono(MonoId m, Scalar c) {
  Expr e;
  if (!c.is_zero()) e.m_terms.push_back({m, std::move(c)});
  return e;
}

Expr Expr::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.m < b.m; });
  Expr e;
  e.m_terms.reserve(terms.size());
  for (auto& t : terms) {
    if (!e.m_terms.empty() && e.m_terms.back().m == t.m) {
      e.m_terms.back().c += t.c;
      if (e.m_terms.back().c.is_zero()) e.m_terms.pop_back();
    } else if (!t.c.is_zero()) {
      e.m_terms.push_back(std::move(t));
    }
  }
  return e;
}

Scalar Expr::coefficient(MonoId m) const {
  auto it = std::lower_bound(m_terms.begin(), m_terms.end(), m,
                             [](const Term& t, MonoId v) { return t.m < v; });
  if (it != m_terms.end() && it->m == m) return it->c;
  return Scalar(0);
}

int Expr::jet_order() const {
  int order = 0;
  for (const auto& t : m_terms) order = std::max(order, int(mono(t.m).max_jet_order));
  return order;
}

std::vector<AtomId> Expr::atoms() const {
  std::vector<AtomId> ids;
  for (const auto& t : m_terms)
    for (auto v : mono(t.m).vars) ids.push_back(packed_atom(v));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

Expr Expr::operator-() const {
  Expr r = *this;
  for (auto& t : r.m_terms) t.c = -t.c;
  return r;
}

Expr& Expr::operator+=(const Expr& o) {
  *this = *this + o;
  return *this;
}

Expr& Expr::operator-=(const Expr& o) {
  *this = *this - o;
  return *this;
}

Expr& Expr::operator*=(const Expr& o) {
  *this = *this * o;
  return *this;
}

Expr& Expr::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    m_terms.clear();
    return *this;
  }
  for (auto& t : m_terms) t.c *= s;
  return *this;
}

Expr operator+(const Expr& a, const Expr& b) {
  Expr r;
  r.m_terms.reserve(a.m_terms.size() + b.m_terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.m_terms.size() && j < b.m_terms.size()) {
    const auto& ta = a.m_terms[i];
    const auto& tb = b.m_terms[j];
    if (ta.m < tb.m) {
      r.m_terms.push_back(ta);
      ++i;
    } else if (tb.m < ta.m) {
      r.m_terms.push_back(tb);
      ++j;
    } else {
      Scalar c = ta.c + tb.c;
      if (!c.is_zero()) r.m_terms.push_back({ta.m, std::move(c)});
      ++i, ++j;
    }
  }
  r.m_terms.insert(r.m_terms.end(), a.m_terms.begin() + i, a.m_terms.end());
  r.m_terms.insert(r.m_terms.end(), b.m_terms.begin() + j, b.m_terms.end());
  return r;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  std::vector<Expr::Term> out;
  out.reserve(a.m_terms.size() * b.m_terms.size());
  for (const auto& ta : a.m_terms)
    for (const auto& tb : b.m_terms)
      out.push_back({mono_mul(ta.m, tb.m), ta.c * tb.c});
  return Expr::from_terms(std::move(out));
}

Expr pow(const Expr& e, unsigned k) {
  Expr acc(1);
  Expr base = e;
  while (k) {
    if (k & 1u) acc *= base;
    if (k >>= 1u) base *= base;
  }
  return acc;
}

Expr sum(std::vector<Expr> parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<Expr::Term> out;
  out.reserve(total);
  for (auto& p : parts)
    for (const auto& t : p.terms()) out.push_back(t);
  return Expr::from_terms(std::move(out));
}

Expr partial(const Expr& e, AtomId wrt) {
  const AtomData& w = atom(wrt);
  if (w.kind == AtomKind::Param)
    throw DomainError("partial derivative with respect to parameter " + atom_name(wrt));
  if (w.kind == AtomKind::Formal)
    throw DomainError("partial derivative with respect to formal atom " + atom_name(wrt));
  const bool wrt_is_coord = (w.kind == AtomKind::Coordinate);
  const bool wrt_is_bare_field = (w.kind == AtomKind::Jet && w.derivs.empty());

  std::vector<Expr::Term> out;
  for (const auto& t : e.terms()) {
    const MonoData& md = mono(t.m);
    for (auto v : md.vars) {
      const AtomId id = packed_atom(v);
      const int exp = packed_exp(v);
      if (id == wrt) {
        out.push_back({mono_div_once(t.m, id), t.c * Scalar(exp)});
        continue;
      }
      const AtomData& ad = atom(id);
      if (ad.kind != AtomKind::Formal) continue;
      // Formal atoms respond to d/dx^mu always, and to d/dA_a^nu when they
      // depend on the fields; they never depend on differentiated jets.
      AtomId derived = -1;
      if (wrt_is_coord) {
        derived = formal_dx(id, w.mu);
      } else if (wrt_is_bare_field && ad.field_dependent) {
        derived = formal_dA(id, w.a, w.mu);
      } else {
        continue;
      }
      const MonoId rest = mono_mul(mono_div_once(t.m, id), mono_of_atom(derived));
      out.push_back({rest, t.c * Scalar(exp)});
    }
  }
  return Expr::from_terms(std::move(out));
}

Expr total_derivative(const Expr& e, int lambda, const DerivCtx& ctx) {
  if (lambda < 0 || lambda > 3)
    throw DomainError("total derivative index out of range 0..3");
  std::vector<Expr::Term> out;
  for (const auto& t : e.terms()) {
    const MonoData& md = mono(t.m);
    for (auto v : md.vars) {
      const AtomId id = packed_atom(v);
      const int exp = packed_exp(v);
      const AtomData& ad = atom(id);
      const Scalar factor = t.c * Scalar(exp);
      switch (ad.kind) {
        case AtomKind::Coordinate:
          if (ad.mu == lambda) out.push_back({mono_div_once(t.m, id), factor});
          break;
        case AtomKind::Jet: {
          if (static_cast<int>(ad.derivs.size()) >= ctx.truncation_order)
            throw TruncationError(atom_name(id), ctx.truncation_order);
          const MonoId rest =
              mono_mul(mono_div_once(t.m, id), mono_of_atom(jet_extend(id, lambda)));
          out.push_back({rest, factor});
          break;
        }
        case AtomKind::Param:
          break;
        case AtomKind::Formal: {
          const MonoId stub = mono_div_once(t.m, id);
          out.push_back({mono_mul(stub, mono_of_atom(formal_dx(id, lambda))), factor});
          if (ad.field_dependent) {
            for (int n = 0; n < ctx.n_fields; ++n)
              for (int al = 0; al < 4; ++al) {
                const MonoId chain =
                    mono_mul(stub, mono_mul(mono_of_atom(jet(n, al, {static_cast<std::uint8_t>(
                                                lambda)})),
                                            mono_of_atom(formal_dA(id, n, al))));
                out.push_back({chain, factor});
              }
          }
          break;
        }
      }
    }
  }
  return Expr::from_terms(std::move(out));
}

Expr substitute(const Expr& e, AtomId target, const Expr& replacement) {
  std::vector<Expr::Term> untouched;
  std::vector<Expr> rebuilt;
  std::vector<Expr> powers = {Expr(1)}; // replacement^0, ^1, ... filled lazily
  for (const auto& t : e.terms()) {
    const int k = mono_exponent(t.m, target);
    if (k == 0) {
      untouched.push_back(t);
      continue;
    }
    while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back() * replacement);
    rebuilt.push_back(Expr::from_mono(mono_without(t.m, target), t.c) * powers[k]);
  }
  rebuilt.push_back(Expr::from_terms(std::move(untouched)));
  return sum(std::move(rebuilt));
}

Expr substitute_all(const Expr& e, const std::map<AtomId, Expr>& replacements) {
  std::vector<Expr::Term> untouched;
  std::vector<Expr> rebuilt;
  for (const auto& t : e.terms()) {
    std::vector<PackedVar> rest;
    Expr factor(1);
    bool touched = false;
    for (auto v : mono(t.m).vars) {
      const auto it = replacements.find(packed_atom(v));
      if (it == replacements.end()) {
        rest.push_back(v);
        continue;
      }
      touched = true;
      factor *= pow(it->second, static_cast<unsigned>(packed_exp(v)));
    }
    if (!touched) {
      untouched.push_back(t);
      continue;
    }
    rebuilt.push_back(Expr::from_mono(mono_intern(std::move(rest)), t.c) * factor);
  }
  rebuilt.push_back(Expr::from_terms(std::move(untouched)));
  return sum(std::move(rebuilt));
}

std::vector<std::pair<MonoId, Expr>> collect(const Expr& e,
                                             const std::function<bool(AtomId)>& classifier) {
  std::map<MonoId, std::vector<Expr::Term>> groups;
  for (const auto& t : e.terms()) {
    std::vector<PackedVar> key, rest;
    for (auto v : mono(t.m).vars)
      (classifier(packed_atom(v)) ? key : rest).push_back(v);
    groups[mono_intern(std::move(key))].push_back({mono_intern(std::move(rest)), t.c});
  }
  std::vector<std::pair<MonoId, Expr>> out;
  out.reserve(groups.size());
  for (auto& [key, terms] : groups)
    out.emplace_back(key, Expr::from_terms(std::move(terms)));
  return out;
}

Scalar evaluate(const Expr& e, const std::map<AtomId, Scalar>& assignment) {
  Scalar total(0);
  for (const auto& t : e.terms()) {
    Scalar prod = t.c;
    for (auto v : mono(t.m).vars) {
      auto it = assignment.find(packed_atom(v));
      if (it == assignment.end()) throw EvalError(atom_name(packed_atom(v)));
      prod *= it->second.pow(static_cast<unsigned>(packed_exp(v)));
    }
    total += prod;
  }
  return total;
}

} // namespace ymsym
