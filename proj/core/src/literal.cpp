#include "spbw/literal.hpp"

#include <algorithm>
#include <cctype>

namespace spbw {

namespace {

struct Factor {
  bool is_var = false;
  std::size_t var = 0;
  unsigned power = 1;
  std::string name;
  std::size_t column = 0;
};

using Term = std::vector<Factor>;

[[noreturn]] void parse_error(std::string_view text, std::size_t pos, const std::string& what) {
  throw Error(Errc::ParseError, what + " at column " + std::to_string(pos + 1) + " in '" + std::string(text) + "'",
              {static_cast<std::int64_t>(pos + 1)});
}

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\''; }

std::vector<Term> lex(std::string_view text) {
  std::string s;
  std::vector<std::size_t> col;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s.push_back(text[i]);
      col.push_back(i);
    }
  auto at = [&](std::size_t i) { return i < col.size() ? col[i] : text.size(); };
  if (s.empty()) parse_error(text, 0, "empty polynomial");

  std::vector<Term> terms(1);
  std::size_t i = 0;
  while (true) {
    Factor f;
    f.column = at(i);
    if (i >= s.size()) parse_error(text, at(i), "expected a factor");
    if (s[i] == '(' || s[i] == '[') {
      const char open = s[i], close = open == '(' ? ')' : ']';
      int depth = 0;
      std::size_t j = i;
      for (; j < s.size(); ++j) {
        if (s[j] == open) ++depth;
        if (s[j] == close && --depth == 0) break;
      }
      if (j >= s.size()) parse_error(text, at(i), "unbalanced bracket");
      f.name = s.substr(i, j - i + 1);
      i = j + 1;
    } else if (name_char(s[i])) {
      std::size_t j = i;
      while (j < s.size() && name_char(s[j])) ++j;
      f.name = s.substr(i, j - i);
      i = j;
      const bool var = f.name.size() >= 2 && f.name[0] == 'x' &&
                       std::all_of(f.name.begin() + 1, f.name.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
      if (var) {
        f.is_var = true;
        f.var = std::stoul(f.name.substr(1));
        if (i < s.size() && s[i] == '^') {
          std::size_t j2 = ++i;
          while (j2 < s.size() && std::isdigit(static_cast<unsigned char>(s[j2]))) ++j2;
          if (j2 == i) parse_error(text, at(i), "expected an exponent");
          f.power = static_cast<unsigned>(std::stoul(s.substr(i, j2 - i)));
          i = j2;
        }
      }
    } else {
      parse_error(text, at(i), std::string("unexpected character '") + s[i] + "'");
    }
    terms.back().push_back(std::move(f));
    if (i >= s.size()) break;
    if (s[i] == '*') {
      ++i;
    } else if (s[i] == '+') {
      ++i;
      terms.emplace_back();
    } else {
      parse_error(text, at(i), std::string("expected '*' or '+', found '") + s[i] + "'");
    }
  }
  return terms;
}

Elem ring_name(const FiniteRing& R, const Factor& f, std::string_view text) {
  auto e = R.find(f.name);
  if (!e)
    throw Error(Errc::UnknownName,
                "unknown ring element '" + f.name + "' at column " + std::to_string(f.column + 1) + " in '" +
                    std::string(text) + "'",
                {static_cast<std::int64_t>(f.column + 1)});
  return *e;
}

void append_factors(GenWord& w, const Presentation& p, const Term& t, std::size_t from, std::string_view text) {
  for (std::size_t k = from; k < t.size(); ++k) {
    const Factor& f = t[k];
    if (f.is_var) {
      if (f.var < 1 || f.var > p.n())
        parse_error(text, f.column, "variable x" + std::to_string(f.var) + " does not exist");
      for (unsigned e = 0; e < f.power; ++e) w.push_back(Token::var(f.var));
    } else {
      w.push_back(Token::coeff(ring_name(p.ring(), f, text)));
    }
  }
}

}  // namespace

SkewPoly parse_poly(const Presentation& p, std::string_view text) {
  std::vector<WordTerm> sum;
  for (const Term& t : lex(text)) {
    GenWord w;
    append_factors(w, p, t, 0, text);
    sum.push_back({p.ring().one(), std::move(w)});
  }
  return p.normalize_sum(sum);
}

ModulePoly parse_module_poly(const RightModule& M, const Presentation& p, std::string_view text) {
  ModulePoly out(M, p);
  ProductCache cache(p);
  for (const Term& t : lex(text)) {
    const Factor& head = t.front();
    if (head.is_var) parse_error(text, head.column, "a module term must start with a module element");
    auto m = M.find(head.name);
    if (!m)
      throw Error(Errc::UnknownName,
                  "unknown module element '" + head.name + "' at column " + std::to_string(head.column + 1),
                  {static_cast<std::int64_t>(head.column + 1)});
    GenWord w;
    append_factors(w, p, t, 1, text);
    out = out + act(ModulePoly::constant(M, p, *m), p.normalize(w), &cache);
  }
  return out;
}

AffinePart parse_affine(const FiniteRing& R, std::size_t n, std::string_view text) {
  AffinePart d{R.zero(), std::vector<Elem>(n, R.zero())};
  for (const Term& t : lex(text)) {
    Elem c = R.one();
    std::size_t var = 0;
    unsigned deg = 0;
    for (const Factor& f : t) {
      if (f.is_var) {
        if (f.var < 1 || f.var > n) parse_error(text, f.column, "variable x" + std::to_string(f.var) + " does not exist");
        deg += f.power;
        var = f.var;
      } else {
        if (deg > 0) parse_error(text, f.column, "coefficients must precede variables in a relation");
        c = R.mul(c, ring_name(R, f, text));
      }
    }
    if (deg >= 2)
      throw Error(Errc::HigherOrderRelation, "relation term of degree " + std::to_string(deg) +
                                                 " in '" + std::string(text) + "'; only R + R*x1 + ... + R*xn is allowed");
    if (deg == 0)
      d.constant = R.add(d.constant, c);
    else
      d.linear[var - 1] = R.add(d.linear[var - 1], c);
  }
  return d;
}

std::string to_string(const MultiIndex& alpha) {
  std::string s;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (alpha[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(k + 1);
    if (alpha[k] > 1) s += "^" + std::to_string(alpha[k]);
  }
  return s.empty() ? "1" : s;
}

std::string to_string(const SkewPoly& f) {
  const FiniteRing& R = f.presentation().ring();
  if (f.is_zero()) return R.name(R.zero());
  std::string s;
  for (const auto& [alpha, r] : f.sorted_terms()) {
    if (!s.empty()) s += " + ";
    if (alpha.is_zero())
      s += R.name(r);
    else if (r == R.one())
      s += to_string(alpha);
    else
      s += R.name(r) + "*" + to_string(alpha);
  }
  return s;
}

std::string to_string(const ModulePoly& m) {
  const RightModule& M = m.module();
  if (m.is_zero()) return M.name(M.zero());
  std::string s;
  for (const auto& [alpha, e] : m.sorted_terms()) {
    if (!s.empty()) s += " + ";
    s += M.name(e);
    if (!alpha.is_zero()) s += "*" + to_string(alpha);
  }
  return s;
}

std::string to_string(const GenWord& w, const FiniteRing& R) {
  std::string s;
  for (const Token& t : w) {
    if (!s.empty()) s += "*";
    s += t.is_var ? "x" + std::to_string(t.value) : R.name(t.value);
  }
  return s.empty() ? "1" : s;
}

}  // namespace spbw
