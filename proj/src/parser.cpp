#include "fint/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "fint/errors.hpp"
#include "fint/rational.hpp"

namespace fint {

// ---------- expression parsing ----------

namespace {

struct ExprParser {
  const std::string& s;
  const std::vector<std::string>& vars;
  std::size_t pos = 0;

  void skipWs() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peekIs(char c) {
    skipWs();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (peekIs(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& expected) {
    throw SyntaxError("expected " + expected, pos);
  }

  Expr parseSum() {
    Expr r = parseProduct();
    for (;;) {
      if (eat('+')) r = eAdd(r, parseProduct());
      else if (eat('-')) r = eSub(r, parseProduct());
      else return r;
    }
  }

  Expr parseProduct() {
    Expr r = parseUnary();
    for (;;) {
      if (eat('*')) r = eMul(r, parseUnary());
      else if (eat('/')) r = eDiv(r, parseUnary());
      else return r;
    }
  }

  Expr parseUnary() {
    if (eat('-')) return eNeg(parseUnary());
    return parsePower();
  }

  Expr parsePower() {
    Expr a = parseAtom();
    if (!eat('^')) return a;
    skipWs();
    bool neg = false;
    if (pos < s.size() && s[pos] == '-') {
      neg = true;
      ++pos;
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("an integer exponent");
    if (pos - start > 9) throw SyntaxError("exponent too large", start);
    int k = std::stoi(s.substr(start, pos - start));
    return mkPow(a, neg ? -k : k);
  }

  Expr parseAtom() {
    skipWs();
    if (pos >= s.size()) fail("a number, name, or '('");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Expr r = parseSum();
      if (!eat(')')) fail("')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parseNumber();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parseName();
    fail("a number, name, or '('");
  }

  Expr parseNumber() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      std::size_t fs = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == fs) fail("digits after the decimal point");
    }
    return mkConst(ratFromDecimal(s.substr(start, pos - start)));
  }

  Expr parseName() {
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    std::string name = s.substr(start, pos - start);
    if (peekIs('(')) {
      ++pos;
      Expr arg = parseSum();
      if (!eat(')')) fail("')'");
      if (name == "exp") return mkExp(arg);
      if (name == "sqrt") return mkSqrt(arg);
      throw SyntaxError("unknown function: " + name, start);
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) return mkVar(static_cast<int>(i));
    throw UnknownVariable(name);
  }
};

}  // namespace

Expr parse_expr(const std::string& text, const std::vector<std::string>& vars) {
  ExprParser p{text, vars};
  p.skipWs();
  if (p.pos >= text.size()) throw SyntaxError("empty expression", 0);
  Expr r = p.parseSum();
  p.skipWs();
  if (p.pos < text.size()) throw SyntaxError("unexpected trailing input", p.pos);
  return simplify(r);
}

// ---------- expression printing ----------

namespace {

struct ExprPrinter {
  const std::vector<std::string>& vars;

  std::string varName(int index) const {
    if (index < 0 || index >= static_cast<int>(vars.size()))
      throw Error("variable index out of range for the supplied names");
    return vars[index];
  }

  // base position of '^' and function-argument-free positions
  std::string atom(const Expr& e) const {
    switch (e->kind) {
      case Kind::Variable:
        return varName(e->var);
      case Kind::Exp:
        return "exp(" + sum(e->arg) + ")";
      case Kind::Sqrt:
        return "sqrt(" + sum(e->arg) + ")";
      case Kind::Constant:
        if (e->value >= 0 && isInteger(e->value)) return ratToString(e->value);
        return "(" + ratToString(e->value) + ")";
      default:
        return "(" + sum(e) + ")";
    }
  }

  std::string power(const Expr& base, int expo) const {
    std::string b = atom(base);
    if (expo == 1) return b;
    return b + "^" + std::to_string(expo);
  }

  // multiplicand position inside a product
  std::string factor(const Expr& e) const {
    switch (e->kind) {
      case Kind::Constant:
        return ratToString(e->value);
      case Kind::Variable:
        return varName(e->var);
      case Kind::IntPower:
        if (e->expo < 0) return "1/" + power(e->base, -e->expo);
        return power(e->base, e->expo);
      case Kind::Exp:
      case Kind::Sqrt:
        return atom(e);
      default:
        return "(" + sum(e) + ")";
    }
  }

  // summand position: full products allowed, '/' used for negative powers
  std::string term(const Expr& e) const {
    if (e->kind == Kind::IntPower && e->expo < 0)
      return "1/" + power(e->base, -e->expo);
    if (e->kind != Kind::Product) return factor(e);
    std::string out;
    bool first = true;
    std::size_t i = 0;
    if (e->kids.size() > 1 && isConst(e->kids[0]) &&
        e->kids[0]->value == -1 && !(e->kids[1]->kind == Kind::IntPower &&
                                     e->kids[1]->expo < 0)) {
      out += "-";
      i = 1;
    }
    for (; i < e->kids.size(); ++i) {
      const Expr& k = e->kids[i];
      if (k->kind == Kind::IntPower && k->expo < 0) {
        if (first) out += "1";
        out += "/" + power(k->base, -k->expo);
      } else {
        if (!first) out += "*";
        out += factor(k);
      }
      first = false;
    }
    return out;
  }

  std::string sum(const Expr& e) const {
    if (e->kind != Kind::Sum) return term(e);
    std::string out;
    for (std::size_t i = 0; i < e->kids.size(); ++i) {
      std::string t = term(e->kids[i]);
      if (i > 0 && !t.empty() && t[0] != '-') out += "+";
      out += t;
    }
    return out;
  }
};

}  // namespace

std::string print_expr(const Expr& e, const std::vector<std::string>& vars) {
  return ExprPrinter{vars}.sum(e);
}

// ---------- problem files ----------

namespace {

struct RawEntry {
  std::string key;
  std::string value;
  int line = 0;
  bool used = false;
};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool isIdentifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

int bracketBalance(const std::string& s, int line) {
  int depth = 0;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (depth < 0) throw SyntaxError("unbalanced brackets", 0, line);
  }
  return depth;
}

std::vector<RawEntry> readEntries(const std::string& content) {
  std::vector<RawEntry> entries;
  std::istringstream in(content);
  std::string physical, acc;
  int lineNo = 0, accLine = 0;
  auto flush = [&]() {
    std::string t = trim(acc);
    acc.clear();
    if (t.empty()) return;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw SyntaxError("expected key = value", 0, accLine);
    RawEntry e;
    e.key = trim(t.substr(0, eq));
    e.value = trim(t.substr(eq + 1));
    e.line = accLine;
    if (!isIdentifier(e.key)) throw SyntaxError("invalid key", 0, accLine);
    if (e.value.empty()) throw SyntaxError("empty value", 0, accLine);
    for (auto& prev : entries)
      if (prev.key == e.key)
        throw SyntaxError("duplicate key: " + e.key, 0, accLine);
    entries.push_back(std::move(e));
  };
  while (std::getline(in, physical)) {
    ++lineNo;
    std::size_t hash = physical.find('#');
    if (hash != std::string::npos) physical.resize(hash);
    if (acc.empty()) {
      if (trim(physical).empty()) continue;
      acc = physical;
      accLine = lineNo;
    } else {
      acc += " " + physical;
    }
    if (bracketBalance(acc, accLine) == 0) flush();
  }
  if (!trim(acc).empty())
    throw SyntaxError("unbalanced brackets at end of file", 0, accLine);
  return entries;
}

std::vector<std::string> splitTopLevel(const std::string& s, char delim) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == delim && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

Expr parseTagged(const std::string& text, const std::vector<std::string>& vars,
                 int line) {
  try {
    return parse_expr(text, vars);
  } catch (SyntaxError& e) {
    throw SyntaxError(e.what(), e.offset, line);
  }
}

VectorField parseField(const RawEntry& e, const std::vector<std::string>& vars) {
  std::string v = e.value;
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw SyntaxError("expected a bracketed component list", 0, e.line);
  VectorField field;
  field.vars = vars;
  for (auto& part : splitTopLevel(v.substr(1, v.size() - 2), ',')) {
    std::string comp = trim(part);
    if (comp.empty()) throw SyntaxError("empty component", 0, e.line);
    field.components.push_back(parseTagged(comp, vars, e.line));
  }
  if (field.components.size() != vars.size())
    throw DimensionMismatch("field has " + std::to_string(field.components.size()) +
                            " components for " + std::to_string(vars.size()) +
                            " variables");
  return field;
}

double parseBound(const std::string& text, int line) {
  std::string t = trim(text);
  bool neg = false;
  std::size_t i = 0;
  if (i < t.size() && (t[i] == '-' || t[i] == '+')) {
    neg = t[i] == '-';
    ++i;
  }
  std::size_t start = i;
  while (i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '.'))
    ++i;
  if (i != t.size() || i == start)
    throw SyntaxError("expected a numeric bound", 0, line);
  Rat r = ratFromDecimal(t.substr(start));
  return toDouble(neg ? -r : r);
}

Box parseDomain(const RawEntry& e, std::size_t n) {
  Box box;
  const std::string& v = e.value;
  std::size_t i = 0;
  while (i < v.size()) {
    while (i < v.size() && std::isspace(static_cast<unsigned char>(v[i]))) ++i;
    if (i >= v.size()) break;
    if (v[i] != '[') throw SyntaxError("expected '['", 0, e.line);
    std::size_t close = v.find(']', i);
    if (close == std::string::npos) throw SyntaxError("expected ']'", 0, e.line);
    auto parts = splitTopLevel(v.substr(i + 1, close - i - 1), ',');
    if (parts.size() != 2)
      throw SyntaxError("expected [lo,hi]", 0, e.line);
    double lo = parseBound(parts[0], e.line);
    double hi = parseBound(parts[1], e.line);
    if (!(lo < hi))
      throw ValidationError("domain interval is empty");
    box.iv.push_back({lo, hi});
    i = close + 1;
  }
  if (box.iv.size() != n)
    throw DimensionMismatch("domain has " + std::to_string(box.iv.size()) +
                            " intervals for " + std::to_string(n) + " variables");
  return box;
}

}  // namespace

Problem load_problem_text(const std::string& content) {
  std::vector<RawEntry> entries = readEntries(content);
  auto find = [&](const std::string& key) -> RawEntry* {
    for (auto& e : entries)
      if (e.key == key) {
        e.used = true;
        return &e;
      }
    return nullptr;
  };

  Problem p;

  RawEntry* varsE = find("vars");
  if (!varsE) throw MissingField("vars");
  {
    std::istringstream vs(varsE->value);
    std::string name;
    while (vs >> name) {
      if (!isIdentifier(name) || name == "exp" || name == "sqrt")
        throw SyntaxError("invalid variable name: " + name, 0, varsE->line);
      for (auto& prev : p.vars)
        if (prev == name)
          throw SyntaxError("duplicate variable: " + name, 0, varsE->line);
      p.vars.push_back(name);
    }
  }
  if (p.vars.empty()) throw SyntaxError("no variables declared", 0, varsE->line);
  const std::size_t n = p.vars.size();

  if (RawEntry* e = find("seed")) {
    for (char c : e->value)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw SyntaxError("seed must be a nonnegative integer", 0, e->line);
    p.seed = std::stoull(e->value);
  }

  if (RawEntry* e = find("domain")) p.domain = parseDomain(*e, n);
  else p.domain = Box::unit(static_cast<int>(n));

  RawEntry* xE = find("X");
  if (!xE) throw MissingField("X");
  p.X = parseField(*xE, p.vars);

  if (RawEntry* e = find("Y")) p.Y = parseField(*e, p.vars);

  for (int k = 1;; ++k) {
    RawEntry* e = find("Y" + std::to_string(k));
    if (!e) break;
    p.Ylist.push_back(parseField(*e, p.vars));
  }

  if (RawEntry* e = find("volume")) p.rho = parseTagged(e->value, p.vars, e->line);
  else p.rho = mkConst(1);

  if (RawEntry* e = find("f")) p.f = parseTagged(e->value, p.vars, e->line);
  if (RawEntry* e = find("lambda")) p.lambda = parseTagged(e->value, p.vars, e->line);
  if (RawEntry* e = find("mu")) p.mu = parseTagged(e->value, p.vars, e->line);

  for (auto& e : entries)
    if (!e.used)
      throw SyntaxError("unknown key: " + e.key, 0, e.line);

  if (isZero(p.rho))
    throw ValidationError("volume density is identically zero");
  // the density must be positive where we sample
  CounterRng rng{p.seed ^ 0x9e3779b97f4a7c15ull};
  for (int k = 0; k < 16; ++k) {
    auto pt = sampleBox(rng, p.domain, static_cast<std::uint64_t>(k));
    try {
      if (evaluate(p.rho, pt) <= 0)
        throw ValidationError("volume density is not positive on the domain");
    } catch (const DomainError&) {
    }
  }

  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_problem_text(buf.str());
}

}  // namespace fint
