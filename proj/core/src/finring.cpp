#include "spbw/finring.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace spbw {

std::vector<Elem> ElementSet::members() const {
  std::vector<Elem> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<Elem>(std::countr_zero(b)));
  return out;
}

bool is_valid_element_name(std::string_view name) {
  if (name.empty()) return false;
  const char open = name.front();
  if (open == '(' || open == '[') {
    const char close = open == '(' ? ')' : ']';
    int depth = 0;
    for (std::size_t i = 0; i < name.size(); ++i) {
      const char ch = name[i];
      if (std::isspace(static_cast<unsigned char>(ch))) return false;
      if (ch == open) ++depth;
      if (ch == close && --depth == 0 && i + 1 != name.size()) return false;
    }
    return depth == 0;
  }
  for (char ch : name) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '\'')) return false;
  }
  // x<digits> is reserved for variables.
  if (name.size() >= 2 && name[0] == 'x' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return false;
  return true;
}

namespace {

[[noreturn]] void fail(Errc code, const std::string& what, std::vector<std::int64_t> witness = {}) {
  throw Error(code, what, std::move(witness));
}

std::string triple(const std::vector<std::string>& names, std::size_t a, std::size_t b, std::size_t c) {
  return "(" + names[a] + ", " + names[b] + ", " + names[c] + ")";
}

std::vector<std::string> default_names(std::size_t q) {
  std::vector<std::string> names(q);
  for (std::size_t i = 0; i < q; ++i) names[i] = std::to_string(i);
  return names;
}

}  // namespace

FiniteRing FiniteRing::from_tables(const Table& add, const Table& mul, std::string label,
                                   std::vector<std::string> names, const RingLimits& limits) {
  const std::size_t q = add.size();
  if (q == 0) fail(Errc::BadTable, "ring must have at least one element");
  if (q > std::min(limits.max_order, kMaxCarrier))
    fail(Errc::RingTooLarge, "ring order " + std::to_string(q) + " exceeds the limit " +
                                 std::to_string(std::min(limits.max_order, kMaxCarrier)),
         {static_cast<std::int64_t>(q)});
  if (mul.size() != q) fail(Errc::BadTable, "addition and multiplication tables differ in size");
  for (const Table* t : {&add, &mul}) {
    for (const auto& row : *t) {
      if (row.size() != q) fail(Errc::BadTable, "table is not square");
      for (Elem e : row)
        if (e >= q) fail(Errc::BadTable, "table entry out of range", {e});
    }
  }
  if (names.empty()) names = default_names(q);
  if (names.size() != q) fail(Errc::BadTable, "name list length differs from ring order");
  {
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (!is_valid_element_name(n)) fail(Errc::BadTable, "invalid element name '" + n + "'");
      if (!seen.insert(n).second) fail(Errc::BadTable, "duplicate element name '" + n + "'");
    }
  }

  FiniteRing r;
  r.order_ = q;
  r.label_ = std::move(label);
  r.names_ = std::move(names);
  r.add_.resize(q * q);
  r.mul_.resize(q * q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) {
      r.add_[a * q + b] = add[a][b];
      r.mul_[a * q + b] = mul[a][b];
    }

  // (R, +) is an abelian group.
  std::optional<Elem> zero;
  for (std::size_t z = 0; z < q && !zero; ++z) {
    bool ok = true;
    for (std::size_t a = 0; a < q && ok; ++a) ok = r.add(z, a) == a && r.add(a, z) == a;
    if (ok) zero = static_cast<Elem>(z);
  }
  if (!zero) fail(Errc::BadGroup, "addition has no identity element");
  r.zero_ = *zero;
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) {
      if (r.add(a, b) != r.add(b, a))
        fail(Errc::BadGroup, "addition is not commutative at (" + r.names_[a] + ", " + r.names_[b] + ")",
             {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)});
      for (std::size_t c = 0; c < q; ++c)
        if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
          fail(Errc::BadGroup, "addition is not associative at " + triple(r.names_, a, b, c),
               {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), static_cast<std::int64_t>(c)});
    }
  r.neg_.assign(q, 0);
  for (std::size_t a = 0; a < q; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < q && !found; ++b)
      if (r.add(a, b) == r.zero_) {
        r.neg_[a] = static_cast<Elem>(b);
        found = true;
      }
    if (!found) fail(Errc::BadGroup, "element " + r.names_[a] + " has no additive inverse", {static_cast<std::int64_t>(a)});
  }

  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      for (std::size_t c = 0; c < q; ++c)
        if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
          fail(Errc::NonAssociative, "multiplication is not associative at " + triple(r.names_, a, b, c),
               {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), static_cast<std::int64_t>(c)});

  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      for (std::size_t c = 0; c < q; ++c) {
        const bool left = r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c));
        const bool right = r.mul(r.add(a, b), c) == r.add(r.mul(a, c), r.mul(b, c));
        if (!left || !right)
          fail(Errc::NonDistributive, "distributivity fails at " + triple(r.names_, a, b, c),
               {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), static_cast<std::int64_t>(c)});
      }

  std::optional<Elem> one;
  for (std::size_t e = 0; e < q && !one; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < q && ok; ++a) ok = r.mul(e, a) == a && r.mul(a, e) == a;
    if (ok) one = static_cast<Elem>(e);
  }
  if (!one) fail(Errc::NoIdentity, "multiplication has no identity element");
  r.one_ = *one;

  if (q > limits.warn_order) {
    const std::string msg = "ring '" + r.label_ + "' has " + std::to_string(q) +
                            " elements; exhaustive deciders grow exponentially in the order";
    if (limits.warn)
      limits.warn(msg);
    else
      std::clog << "warning: " << msg << '\n';
  }
  return r;
}

FiniteRing FiniteRing::integers_mod(std::size_t n) {
  if (n == 0) fail(Errc::BadTable, "Z_0 is not finite");
  Table add(n, std::vector<Elem>(n)), mul(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      add[a][b] = static_cast<Elem>((a + b) % n);
      mul[a][b] = static_cast<Elem>((a * b) % n);
    }
  return from_tables(add, mul, "Z" + std::to_string(n));
}

FiniteRing FiniteRing::product_of_integers_mod(const std::vector<std::size_t>& factors) {
  if (factors.empty()) fail(Errc::BadTable, "empty product");
  std::size_t q = 1;
  for (std::size_t f : factors) {
    if (f == 0) fail(Errc::BadTable, "Z_0 is not finite");
    q *= f;
    if (q > kMaxCarrier) fail(Errc::RingTooLarge, "product ring is too large", {static_cast<std::int64_t>(q)});
  }
  auto decode = [&](std::size_t idx) {
    std::vector<std::size_t> c(factors.size());
    for (std::size_t k = 0; k < factors.size(); ++k) {
      c[k] = idx % factors[k];
      idx /= factors[k];
    }
    return c;
  };
  auto encode = [&](const std::vector<std::size_t>& c) {
    std::size_t idx = 0;
    for (std::size_t k = factors.size(); k-- > 0;) idx = idx * factors[k] + c[k];
    return static_cast<Elem>(idx);
  };
  Table add(q, std::vector<Elem>(q)), mul(q, std::vector<Elem>(q));
  std::vector<std::string> names(q);
  for (std::size_t a = 0; a < q; ++a) {
    const auto ca = decode(a);
    std::string name = "(";
    for (std::size_t k = 0; k < ca.size(); ++k) name += (k ? "," : "") + std::to_string(ca[k]);
    names[a] = name + ")";
    for (std::size_t b = 0; b < q; ++b) {
      const auto cb = decode(b);
      std::vector<std::size_t> s(factors.size()), p(factors.size());
      for (std::size_t k = 0; k < factors.size(); ++k) {
        s[k] = (ca[k] + cb[k]) % factors[k];
        p[k] = (ca[k] * cb[k]) % factors[k];
      }
      add[a][b] = encode(s);
      mul[a][b] = encode(p);
    }
  }
  std::string label;
  for (std::size_t k = 0; k < factors.size(); ++k) label += (k ? "x" : "") + ("Z" + std::to_string(factors[k]));
  return from_tables(add, mul, label, names);
}

FiniteRing FiniteRing::dual_numbers(std::size_t n) {
  if (n == 0) fail(Errc::BadTable, "Z_0 is not finite");
  const std::size_t q = n * n;
  if (q > kMaxCarrier) fail(Errc::RingTooLarge, "dual numbers ring is too large", {static_cast<std::int64_t>(q)});
  Table add(q, std::vector<Elem>(q)), mul(q, std::vector<Elem>(q));
  std::vector<std::string> names(q);
  for (std::size_t x = 0; x < q; ++x) {
    const std::size_t a = x % n, b = x / n;
    if (b == 0)
      names[x] = std::to_string(a);
    else if (a == 0)
      names[x] = b == 1 ? "y" : "(" + std::to_string(b) + "y)";
    else
      names[x] = "(" + std::to_string(a) + "+" + (b == 1 ? "" : std::to_string(b)) + "y)";
    for (std::size_t z = 0; z < q; ++z) {
      const std::size_t c = z % n, d = z / n;
      add[x][z] = static_cast<Elem>((a + c) % n + n * ((b + d) % n));
      mul[x][z] = static_cast<Elem>((a * c) % n + n * ((a * d + b * c) % n));
    }
  }
  return from_tables(add, mul, "Z" + std::to_string(n) + "[y]/(y^2)", names);
}

FiniteRing FiniteRing::upper_triangular(std::size_t dim, std::size_t p) {
  if (dim == 0 || p == 0) fail(Errc::BadTable, "degenerate matrix ring");
  const std::size_t slots = dim * (dim + 1) / 2;
  std::size_t q = 1;
  for (std::size_t s = 0; s < slots; ++s) {
    q *= p;
    if (q > kMaxCarrier) fail(Errc::RingTooLarge, "upper-triangular ring is too large", {static_cast<std::int64_t>(q)});
  }
  // Slot order is row-major over i <= j; slot 0 varies fastest in the index.
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) pos.emplace_back(i, j);
  auto decode = [&](std::size_t idx) {
    std::vector<std::vector<std::size_t>> m(dim, std::vector<std::size_t>(dim, 0));
    for (const auto& [i, j] : pos) {
      m[i][j] = idx % p;
      idx /= p;
    }
    return m;
  };
  auto encode = [&](const std::vector<std::vector<std::size_t>>& m) {
    std::size_t idx = 0;
    for (std::size_t s = pos.size(); s-- > 0;) idx = idx * p + m[pos[s].first][pos[s].second];
    return static_cast<Elem>(idx);
  };
  Table add(q, std::vector<Elem>(q)), mul(q, std::vector<Elem>(q));
  std::vector<std::string> names(q);
  for (std::size_t x = 0; x < q; ++x) {
    const auto a = decode(x);
    std::string name = "[";
    for (std::size_t i = 0; i < dim; ++i) {
      if (i) name += ";";
      for (std::size_t j = i; j < dim; ++j) name += (j > i ? "," : "") + std::to_string(a[i][j]);
    }
    names[x] = name + "]";
    for (std::size_t z = 0; z < q; ++z) {
      const auto b = decode(z);
      std::vector<std::vector<std::size_t>> s(dim, std::vector<std::size_t>(dim, 0)), m = s;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j) {
          s[i][j] = (a[i][j] + b[i][j]) % p;
          std::size_t acc = 0;
          for (std::size_t k = i; k <= j; ++k) acc += a[i][k] * b[k][j];
          m[i][j] = acc % p;
        }
      add[x][z] = encode(s);
      mul[x][z] = encode(m);
    }
  }
  return from_tables(add, mul, "UT" + std::to_string(dim) + "(Z" + std::to_string(p) + ")", names);
}

Elem FiniteRing::times(Elem a, std::size_t n) const {
  Elem acc = zero_;
  for (std::size_t i = 0; i < n; ++i) acc = add(acc, a);
  return acc;
}

std::optional<Elem> FiniteRing::find(std::string_view name) const {
  for (std::size_t i = 0; i < order_; ++i)
    if (names_[i] == name) return static_cast<Elem>(i);
  return std::nullopt;
}

FiniteRing::Table FiniteRing::add_table() const {
  Table t(order_, std::vector<Elem>(order_));
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b) t[a][b] = add(static_cast<Elem>(a), static_cast<Elem>(b));
  return t;
}

FiniteRing::Table FiniteRing::mul_table() const {
  Table t(order_, std::vector<Elem>(order_));
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < order_; ++b) t[a][b] = mul(static_cast<Elem>(a), static_cast<Elem>(b));
  return t;
}

std::vector<Elem> idempotents(const FiniteRing& ring) {
  std::vector<Elem> out;
  for (std::size_t e = 0; e < ring.order(); ++e)
    if (ring.mul(static_cast<Elem>(e), static_cast<Elem>(e)) == e) out.push_back(static_cast<Elem>(e));
  return out;
}

std::vector<Elem> left_invertibles(const FiniteRing& ring) {
  std::vector<Elem> out;
  for (std::size_t u = 0; u < ring.order(); ++u)
    for (std::size_t v = 0; v < ring.order(); ++v)
      if (ring.mul(static_cast<Elem>(v), static_cast<Elem>(u)) == ring.one()) {
        out.push_back(static_cast<Elem>(u));
        break;
      }
  return out;
}

bool is_central(const FiniteRing& ring, Elem c) {
  for (std::size_t r = 0; r < ring.order(); ++r)
    if (ring.mul(c, static_cast<Elem>(r)) != ring.mul(static_cast<Elem>(r), c)) return false;
  return true;
}

bool is_invertible(const FiniteRing& ring, Elem c) {
  for (std::size_t v = 0; v < ring.order(); ++v)
    if (ring.mul(c, static_cast<Elem>(v)) == ring.one() && ring.mul(static_cast<Elem>(v), c) == ring.one()) return true;
  return false;
}

namespace {

void check_map_table(const FiniteRing& ring, const std::vector<Elem>& table) {
  if (table.size() != ring.order())
    fail(Errc::BadTable, "map table has " + std::to_string(table.size()) + " entries, ring has " +
                             std::to_string(ring.order()));
  for (Elem e : table)
    if (e >= ring.order()) fail(Errc::BadTable, "map table entry out of range", {e});
}

void check_additive(const FiniteRing& ring, const std::vector<Elem>& t, const char* what) {
  const std::size_t q = ring.order();
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      if (t[ring.add(static_cast<Elem>(a), static_cast<Elem>(b))] != ring.add(t[a], t[b]))
        fail(Errc::NotAdditive,
             std::string(what) + " is not additive at (" + ring.name(static_cast<Elem>(a)) + ", " +
                 ring.name(static_cast<Elem>(b)) + ")",
             {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)});
}

}  // namespace

RingMap RingMap::endomorphism(const FiniteRing& ring, std::vector<Elem> table) {
  check_map_table(ring, table);
  check_additive(ring, table, "endomorphism");
  const std::size_t q = ring.order();
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      if (table[ring.mul(static_cast<Elem>(a), static_cast<Elem>(b))] != ring.mul(table[a], table[b]))
        fail(Errc::NotMultiplicative,
             "endomorphism is not multiplicative at (" + ring.name(static_cast<Elem>(a)) + ", " +
                 ring.name(static_cast<Elem>(b)) + ")",
             {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)});
  if (table[ring.one()] != ring.one()) fail(Errc::NotUnital, "endomorphism does not fix the identity");
  std::vector<Elem> inverse(q, 0);
  std::vector<int> preimage(q, -1);
  for (std::size_t a = 0; a < q; ++a) {
    if (preimage[table[a]] >= 0)
      fail(Errc::NotInjective,
           "endomorphism identifies " + ring.name(static_cast<Elem>(preimage[table[a]])) + " and " +
               ring.name(static_cast<Elem>(a)),
           {preimage[table[a]], static_cast<std::int64_t>(a)});
    preimage[table[a]] = static_cast<int>(a);
    inverse[table[a]] = static_cast<Elem>(a);
  }
  RingMap m;
  m.kind_ = MapKind::Endomorphism;
  m.table_ = std::move(table);
  m.inverse_ = std::move(inverse);
  return m;
}

RingMap RingMap::sigma_derivation(const FiniteRing& ring, const RingMap& sigma, std::vector<Elem> table) {
  if (sigma.kind() != MapKind::Endomorphism) fail(Errc::BadTable, "derivation base must be an endomorphism");
  check_map_table(ring, table);
  check_additive(ring, table, "derivation");
  const std::size_t q = ring.order();
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) {
      const Elem ea = static_cast<Elem>(a), eb = static_cast<Elem>(b);
      const Elem lhs = table[ring.mul(ea, eb)];
      const Elem rhs = ring.add(ring.mul(sigma(ea), table[b]), ring.mul(table[a], eb));
      if (lhs != rhs)
        fail(Errc::LeibnizFail,
             "Leibniz rule fails at (" + ring.name(ea) + ", " + ring.name(eb) + "): " + ring.name(lhs) +
                 " != " + ring.name(rhs),
             {static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)});
    }
  RingMap m;
  m.kind_ = MapKind::SigmaDerivation;
  m.table_ = std::move(table);
  m.base_ = sigma.table();
  return m;
}

RingMap RingMap::identity(const FiniteRing& ring) {
  std::vector<Elem> t(ring.order());
  std::iota(t.begin(), t.end(), Elem{0});
  return endomorphism(ring, std::move(t));
}

RingMap RingMap::zero_derivation(const FiniteRing& ring, const RingMap& sigma) {
  return sigma_derivation(ring, sigma, std::vector<Elem>(ring.order(), ring.zero()));
}

bool RingMap::is_identity() const {
  for (std::size_t a = 0; a < table_.size(); ++a)
    if (table_[a] != a) return false;
  return true;
}

bool RingMap::is_zero(const FiniteRing& ring) const {
  return std::all_of(table_.begin(), table_.end(), [&](Elem e) { return e == ring.zero(); });
}

MapMonoid closure_monoid(const FiniteRing& ring, std::span<const std::vector<Elem>> generators,
                         std::size_t max_elements) {
  const std::size_t q = ring.order();
  for (const auto& g : generators)
    if (g.size() != q) fail(Errc::BadTable, "generator table does not match the ring order");

  MapMonoid monoid;
  std::map<std::vector<Elem>, std::size_t> seen;
  std::vector<Elem> id(q);
  std::iota(id.begin(), id.end(), Elem{0});
  seen.emplace(id, 0);
  monoid.elements.push_back(std::move(id));
  monoid.words.emplace_back();

  for (std::size_t head = 0; head < monoid.elements.size(); ++head) {
    for (std::size_t g = 0; g < generators.size(); ++g) {
      std::vector<Elem> composed(q);
      const auto& h = monoid.elements[head];
      for (std::size_t x = 0; x < q; ++x) composed[x] = generators[g][h[x]];
      if (seen.contains(composed)) continue;
      if (monoid.elements.size() >= max_elements)
        fail(Errc::TooLarge, "map monoid exceeds " + std::to_string(max_elements) + " elements");
      std::vector<std::size_t> word{g};
      word.insert(word.end(), monoid.words[head].begin(), monoid.words[head].end());
      seen.emplace(composed, monoid.elements.size());
      monoid.elements.push_back(std::move(composed));
      monoid.words.push_back(std::move(word));
    }
  }
  return monoid;
}

MapMonoid closure_monoid(const FiniteRing& ring, std::span<const RingMap> generators, std::size_t max_elements) {
  std::vector<std::vector<Elem>> tables;
  tables.reserve(generators.size());
  for (const auto& g : generators) tables.push_back(g.table());
  return closure_monoid(ring, std::span<const std::vector<Elem>>(tables), max_elements);
}

}  // namespace spbw
