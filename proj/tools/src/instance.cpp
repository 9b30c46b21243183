#include "spbw/cli/instance.hpp"

#include <fstream>
#include <set>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "spbw/literal.hpp"

namespace spbw::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(Errc::ParseError, path + ": " + what);
}

// Re-raises a component error with the field that produced it.
template <class F>
auto at(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what(), e.witness());
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

struct RingSpec {
  std::shared_ptr<const FiniteRing> ring;
  ojson canonical;
  enum class Kind { Tables, Integers, Product, Dual, UpperTriangular } kind = Kind::Tables;
  std::vector<std::size_t> params;
};

Elem element_ref(const json& v, const std::vector<std::string>& names, std::size_t order, const std::string& path) {
  if (v.is_number_unsigned()) {
    const auto k = v.get<std::uint64_t>();
    if (k >= order) bad(path, "element index " + std::to_string(k) + " out of range");
    return static_cast<Elem>(k);
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == s) return static_cast<Elem>(k);
    throw Error(Errc::UnknownName, path + ": unknown element '" + s + "'");
  }
  bad(path, "expected an element name or index");
}

std::vector<std::vector<Elem>> table(const json& v, const std::vector<std::string>& names, std::size_t rows,
                                     std::size_t cols, std::size_t range, const std::string& path) {
  if (!v.is_array() || v.size() != rows) bad(path, "expected " + std::to_string(rows) + " rows");
  std::vector<std::vector<Elem>> out;
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = v[i];
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != cols) bad(rp, "expected " + std::to_string(cols) + " entries");
    std::vector<Elem> r;
    for (std::size_t j = 0; j < cols; ++j) r.push_back(element_ref(row[j], names, range, rp + "[" + std::to_string(j) + "]"));
    out.push_back(std::move(r));
  }
  return out;
}

ojson table_json(const std::vector<std::vector<Elem>>& t) {
  ojson out = ojson::array();
  for (const auto& row : t) {
    ojson r = ojson::array();
    for (Elem e : row) r.push_back(e);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> names_of(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected a list of element names");
  std::vector<std::string> out;
  for (const auto& n : v) {
    if (!n.is_string()) bad(path, "element names must be strings");
    out.push_back(n.get<std::string>());
  }
  return out;
}

RingSpec parse_ring(const json& v) {
  RingSpec spec;
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::smatch m;
    static const std::regex integers(R"(Z(\d+))");
    static const std::regex product(R"(Z\d+(xZ\d+)+)");
    static const std::regex dual(R"(Z(\d+)\[y\]/\(y\^2\))");
    static const std::regex upper(R"(UT(\d+)\(Z(\d+)\))");
    auto num = [](const std::string& t) { return static_cast<std::size_t>(std::stoul(t)); };
    if (std::regex_match(s, m, integers)) {
      spec.kind = RingSpec::Kind::Integers;
      spec.params = {num(m[1])};
      spec.ring = std::make_shared<const FiniteRing>(at("ring", [&] { return FiniteRing::integers_mod(num(m[1])); }));
    } else if (std::regex_match(s, product)) {
      spec.kind = RingSpec::Kind::Product;
      static const std::regex factor(R"(\d+)");
      for (auto it = std::sregex_iterator(s.begin(), s.end(), factor); it != std::sregex_iterator(); ++it)
        spec.params.push_back(num(it->str()));
      spec.ring = std::make_shared<const FiniteRing>(
          at("ring", [&] { return FiniteRing::product_of_integers_mod(spec.params); }));
    } else if (std::regex_match(s, m, dual)) {
      spec.kind = RingSpec::Kind::Dual;
      spec.params = {num(m[1])};
      spec.ring = std::make_shared<const FiniteRing>(at("ring", [&] { return FiniteRing::dual_numbers(num(m[1])); }));
    } else if (std::regex_match(s, m, upper)) {
      spec.kind = RingSpec::Kind::UpperTriangular;
      spec.params = {num(m[1]), num(m[2])};
      spec.ring = std::make_shared<const FiniteRing>(
          at("ring", [&] { return FiniteRing::upper_triangular(num(m[1]), num(m[2])); }));
    } else {
      bad("ring", "unknown ring shorthand '" + s + "' (expected Zn, Zn1xZn2..., Zn[y]/(y^2) or UTd(Zp))");
    }
    spec.canonical = s;
    return spec;
  }
  if (!v.is_object()) bad("ring", "expected a shorthand string or an object with tables");
  const auto names = at("ring.elements", [&] { return names_of(v.at("elements"), "ring.elements"); });
  const std::size_t q = names.size();
  const auto add = table(v.at("add"), names, q, q, q, "ring.add");
  const auto mul = table(v.at("mul"), names, q, q, q, "ring.mul");
  const std::string label = v.value("label", std::string("R"));
  spec.ring = std::make_shared<const FiniteRing>(at("ring", [&] { return FiniteRing::from_tables(add, mul, label, names); }));
  spec.canonical = ojson{{"label", label}, {"elements", names}, {"add", table_json(add)}, {"mul", table_json(mul)}};
  return spec;
}

std::vector<Elem> map_table(const json& v, const RingSpec& spec, bool derivation, const std::string& path) {
  const FiniteRing& R = *spec.ring;
  const std::size_t q = R.order();
  std::vector<Elem> t(q);
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (!derivation && s == "id") {
      for (std::size_t a = 0; a < q; ++a) t[a] = static_cast<Elem>(a);
    } else if (derivation && s == "zero") {
      for (std::size_t a = 0; a < q; ++a) t[a] = R.zero();
    } else if (!derivation && s == "swap") {
      if (spec.kind != RingSpec::Kind::Product || spec.params.size() != 2 || spec.params[0] != spec.params[1])
        bad(path, "\"swap\" needs a ring of the form ZnxZn");
      const std::size_t n = spec.params[0];
      for (std::size_t a = 0; a < q; ++a) t[a] = static_cast<Elem>(a / n + n * (a % n));
    } else if (derivation && s == "d/dy") {
      if (spec.kind != RingSpec::Kind::Dual) bad(path, "\"d/dy\" needs a ring of the form Zn[y]/(y^2)");
      const std::size_t n = spec.params[0];
      for (std::size_t a = 0; a < q; ++a) t[a] = static_cast<Elem>(a / n);
    } else {
      bad(path, "unknown map shorthand '" + s + "'");
    }
    return t;
  }
  if (!v.is_array() || v.size() != q) bad(path, "expected a shorthand or a table of " + std::to_string(q) + " entries");
  for (std::size_t a = 0; a < q; ++a)
    t[a] = element_ref(v[a], R.names(), q, path + "[" + std::to_string(a) + "]");
  return t;
}

ojson map_json(const json& given, const std::vector<Elem>& t, const FiniteRing& R, bool derivation) {
  bool ident = true, zero = true;
  for (std::size_t a = 0; a < t.size(); ++a) {
    ident = ident && t[a] == a;
    zero = zero && t[a] == R.zero();
  }
  if (!derivation && ident) return "id";
  if (derivation && zero) return "zero";
  if (given.is_string()) return given.get<std::string>();
  ojson out = ojson::array();
  for (Elem e : t) out.push_back(R.name(e));
  return out;
}

std::string affine_string(const AffinePart& d, const FiniteRing& R) {
  std::string s;
  auto term = [&](Elem c, const std::string& var) {
    if (c == R.zero()) return;
    if (!s.empty()) s += " + ";
    if (var.empty())
      s += R.name(c);
    else
      s += c == R.one() ? var : R.name(c) + "*" + var;
  };
  term(d.constant, "");
  for (std::size_t k = 0; k < d.linear.size(); ++k) term(d.linear[k], "x" + std::to_string(k + 1));
  return s.empty() ? R.name(R.zero()) : s;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[k] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

Instance parse_instance(std::string_view text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string detail = e.what();
    if (const auto cut = detail.find(": "); cut != std::string::npos) detail = detail.substr(cut + 2);
    throw Error(Errc::ParseError,
                "malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + detail,
                {static_cast<std::int64_t>(line), static_cast<std::int64_t>(col)});
  }
  if (!doc.is_object()) bad("(root)", "expected a JSON object");
  static const std::set<std::string> known{"name",     "ring",   "variables", "order",     "sigma",  "delta",
                                           "relations", "module", "embedding", "claims", "consistency"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) bad(key, "unknown field");

  Instance inst;
  ojson canon;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) bad("name", "expected a string");
    inst.name = doc["name"].get<std::string>();
    canon["name"] = inst.name;
  }

  if (!doc.contains("ring")) bad("ring", "missing");
  RingSpec rs = parse_ring(doc["ring"]);
  inst.ring = rs.ring;
  const FiniteRing& R = *rs.ring;
  canon["ring"] = rs.canonical;

  PresentationData data;
  data.ring = rs.ring;
  if (!doc.contains("variables") || !doc["variables"].is_number_unsigned()) bad("variables", "expected a positive integer");
  data.n = doc["variables"].get<std::size_t>();
  if (data.n == 0) bad("variables", "expected a positive integer");
  if (data.n > kMaxVariables)
    throw Error(Errc::TooManyVariables, "variables: at most " + std::to_string(kMaxVariables) + " are supported",
                {static_cast<std::int64_t>(data.n)});
  canon["variables"] = data.n;

  // order
  {
    OrderKind kind = OrderKind::DegLex;
    std::vector<std::size_t> prec;
    for (std::size_t k = data.n; k-- > 0;) prec.push_back(k);
    if (doc.contains("order")) {
      const json& o = doc["order"];
      auto kind_of = [](const std::string& s) {
        if (s == "deglex") return OrderKind::DegLex;
        if (s == "lex") return OrderKind::Lex;
        bad("order", "expected \"deglex\" or \"lex\"");
      };
      if (o.is_string()) {
        kind = kind_of(o.get<std::string>());
      } else if (o.is_object()) {
        kind = kind_of(o.value("kind", std::string("deglex")));
        if (o.contains("precedence")) {
          prec.clear();
          for (const auto& p : o["precedence"]) {
            if (!p.is_number_unsigned() || p.get<std::size_t>() < 1 || p.get<std::size_t>() > data.n)
              bad("order.precedence", "expected variable numbers 1.." + std::to_string(data.n));
            prec.push_back(p.get<std::size_t>() - 1);
          }
        }
      } else {
        bad("order", "expected a string or an object");
      }
    }
    MonomialOrder ord = at("order", [&] { return MonomialOrder(kind, prec); });
    ojson oc{{"kind", kind == OrderKind::DegLex ? "deglex" : "lex"}, {"precedence", ojson::array()}};
    for (std::size_t p : prec) oc["precedence"].push_back(p + 1);
    canon["order"] = oc;
    if (options.order) ord = MonomialOrder(*options.order, prec);
    data.order = ord;
  }

  // sigma and delta
  auto per_variable = [&](const char* key, const char* dflt) {
    std::vector<json> out;
    if (!doc.contains(key)) {
      out.assign(data.n, json(dflt));
    } else if (doc[key].is_string()) {
      out.assign(data.n, doc[key]);
    } else if (doc[key].is_array() && doc[key].size() == data.n) {
      for (const auto& v : doc[key]) out.push_back(v);
    } else {
      bad(key, "expected a shorthand or a list of " + std::to_string(data.n) + " maps");
    }
    return out;
  };
  const auto sig = per_variable("sigma", "id");
  const auto del = per_variable("delta", "zero");
  canon["sigma"] = ojson::array();
  canon["delta"] = ojson::array();
  for (std::size_t i = 0; i < data.n; ++i) {
    const std::string sp = "sigma[" + std::to_string(i) + "]";
    const std::string dp = "delta[" + std::to_string(i) + "]";
    auto st = map_table(sig[i], rs, false, sp);
    data.sigmas.push_back(at(sp, [&] { return RingMap::endomorphism(R, st); }));
    canon["sigma"].push_back(map_json(sig[i], st, R, false));
    auto dt = map_table(del[i], rs, true, dp);
    data.deltas.push_back(at(dp, [&] { return RingMap::sigma_derivation(R, data.sigmas.back(), dt); }));
    canon["delta"].push_back(map_json(del[i], dt, R, true));
  }

  // relations
  if (doc.contains("relations")) {
    if (!doc["relations"].is_array()) bad("relations", "expected a list");
    std::size_t k = 0;
    for (const auto& rel : doc["relations"]) {
      const std::string path = "relations[" + std::to_string(k++) + "]";
      if (!rel.is_object() || !rel.contains("i") || !rel.contains("j") || !rel.contains("c"))
        bad(path, "expected an object with i, j and c");
      if (!rel["i"].is_number_unsigned() || !rel["j"].is_number_unsigned()) bad(path, "i and j must be variable numbers");
      const auto i = rel["i"].get<std::size_t>(), j = rel["j"].get<std::size_t>();
      if (i < 1 || j > data.n || i >= j) bad(path, "expected 1 <= i < j <= " + std::to_string(data.n));
      if (data.relations.count({i, j})) bad(path, "duplicate relation for the pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
      QuadRelation q;
      q.c = element_ref(rel["c"], R.names(), R.order(), path + ".c");
      q.d = AffinePart{R.zero(), std::vector<Elem>(data.n, R.zero())};
      if (rel.contains("d")) {
        if (!rel["d"].is_string()) bad(path + ".d", "expected a polynomial literal");
        q.d = at(path + ".d", [&] { return parse_affine(R, data.n, rel["d"].get<std::string>()); });
      }
      data.relations[{i, j}] = q;
    }
  }
  canon["relations"] = ojson::array();
  for (const auto& [ij, q] : data.relations)
    canon["relations"].push_back(
        ojson{{"i", ij.first}, {"j", ij.second}, {"c", R.name(q.c)}, {"d", affine_string(q.d, R)}});

  if (doc.contains("claims")) {
    const json& c = doc["claims"];
    if (!c.is_object()) bad("claims", "expected an object");
    ojson cc = ojson::object();
    for (const auto& [key, value] : c.items()) {
      if (!value.is_boolean()) bad("claims." + key, "expected true or false");
      if (key == "quasi_commutative")
        data.claim_quasi_commutative = value.get<bool>();
      else if (key == "bijective")
        data.claim_bijective = value.get<bool>();
      else
        bad("claims." + key, "unknown claim");
    }
    if (data.claim_quasi_commutative) cc["quasi_commutative"] = *data.claim_quasi_commutative;
    if (data.claim_bijective) cc["bijective"] = *data.claim_bijective;
    canon["claims"] = cc;
  }

  if (doc.contains("consistency")) {
    const json& c = doc["consistency"];
    if (!c.is_object()) bad("consistency", "expected an object");
    ojson cc = ojson::object();
    for (const auto& [key, value] : c.items()) {
      if (!value.is_number_unsigned()) bad("consistency." + key, "expected a non-negative integer");
      if (key == "bound")
        data.consistency_bound = value.get<unsigned>();
      else if (key == "fuzz_triples")
        data.fuzz_triples = value.get<std::size_t>();
      else if (key == "seed")
        data.seed = value.get<std::uint64_t>();
      else
        bad("consistency." + key, "unknown setting");
    }
    cc["bound"] = data.consistency_bound;
    cc["fuzz_triples"] = data.fuzz_triples;
    cc["seed"] = data.seed;
    canon["consistency"] = cc;
  }
  if (options.seed) data.seed = *options.seed;

  inst.presentation = at("presentation", [&] { return Presentation::create(std::move(data)); });

  // module
  const json mod = doc.contains("module") ? doc["module"] : json("regular");
  if (mod.is_string()) {
    if (mod.get<std::string>() != "regular") bad("module", "expected \"regular\", a quotient or tables");
    inst.module = std::make_shared<const RightModule>(RightModule::regular(rs.ring));
    canon["module"] = "regular";
  } else if (mod.is_object() && mod.contains("quotient")) {
    std::vector<Elem> gens;
    ojson gc = ojson::array();
    if (!mod["quotient"].is_array()) bad("module.quotient", "expected a list of ring elements");
    for (std::size_t k = 0; k < mod["quotient"].size(); ++k) {
      gens.push_back(element_ref(mod["quotient"][k], R.names(), R.order(), "module.quotient[" + std::to_string(k) + "]"));
      gc.push_back(R.name(gens.back()));
    }
    inst.module = std::make_shared<const RightModule>(at("module", [&] { return RightModule::quotient(rs.ring, gens); }));
    canon["module"] = ojson{{"quotient", gc}};
  } else if (mod.is_object()) {
    const auto names = at("module.elements", [&] { return names_of(mod.at("elements"), "module.elements"); });
    const std::size_t m = names.size();
    const auto add = table(mod.at("add"), names, m, m, m, "module.add");
    const auto action = table(mod.at("action"), names, m, R.order(), m, "module.action");
    const std::string label = mod.value("label", std::string("M"));
    inst.module = std::make_shared<const RightModule>(
        at("module", [&] { return RightModule::from_tables(rs.ring, add, action, label, names); }));
    canon["module"] =
        ojson{{"label", label}, {"elements", names}, {"add", table_json(add)}, {"action", table_json(action)}};
  } else {
    bad("module", "expected \"regular\", a quotient or tables");
  }

  if (doc.contains("embedding")) {
    const Elem u = element_ref(doc["embedding"], inst.module->names(), inst.module->order(), "embedding");
    at("embedding", [&] { return Embedding::validate(*inst.module, u); });
    inst.embedding = u;
    canon["embedding"] = inst.module->name(u);
  }

  inst.canonical = canon.dump(2) + "\n";
  inst.digest = fnv1a64_hex(inst.canonical);
  return inst;
}

Instance load_instance(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), options);
}

}  // namespace spbw::cli
