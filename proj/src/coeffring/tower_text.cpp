#include <cctype>
#include <charconv>

#include "chromalg/coeffring/tower.hpp"
#include "chromalg/error.hpp"

namespace chromalg {

namespace {

std::string strip_spaces(std::string_view in) {
  std::string s;
  for (char c : in)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  return s;
}

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  bool done() const { return i >= s.size(); }
  char peek() const { return done() ? '\0' : s[i]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++i;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(i) + " in \"" + s + "\"");
  }
  long long integer() {
    bool neg = eat('-');
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) fail("expected integer");
    long long v = 0;
    std::from_chars(s.data() + i, s.data() + j, v);
    i = j;
    return neg ? -v : v;
  }
  // Text up to the ')' matching an already consumed '('.
  std::string balanced() {
    int depth = 1;
    std::size_t start = i;
    while (!done()) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')' && --depth == 0) {
        std::string out = s.substr(start, i - start);
        ++i;
        return out;
      }
      ++i;
    }
    fail("unbalanced parenthesis");
  }
};

}  // namespace

std::string Tower::format_with(const TowerElem& a, int ngens) const {
  const FiniteField& F = *field_;
  std::string out;
  auto append = [&](const std::string& term) {
    if (!out.empty()) out += " + ";
    out += term;
  };
  for (int idx = 0; idx < static_cast<int>(a.coords().size()); ++idx) {
    const LSeries& s = a.coords()[static_cast<std::size_t>(idx)];
    auto ex = exponents(idx);
    std::string zpart;
    for (int j = 0; j < ngens && j < static_cast<int>(ex.size()); ++j) {
      if (ex[j] == 0) continue;
      zpart += "*z" + std::to_string(j + 1);
      if (ex[j] > 1) zpart += "^" + std::to_string(ex[j]);
    }
    for (std::size_t k = 0; k < s.coef.size(); ++k) {
      if (s.coef[k] == 0) continue;
      int deg = s.val + static_cast<int>(k);
      std::string c = F.to_string(s.coef[k]);
      if (c.find('+') != std::string::npos || c.find('a') != std::string::npos) c = "(" + c + ")";
      std::string tpart;
      if (deg != 0) tpart = deg == 1 ? "*t" : "*t^" + std::to_string(deg);
      std::string mono = tpart + zpart;
      if (c == "1" && !mono.empty())
        append(mono.substr(1));
      else
        append(c + mono);
    }
  }
  int prec = a.precision();
  if (laurent_ && prec < LSeries::kExact) append("O(t^" + std::to_string(prec) + ")");
  return out.empty() ? "0" : out;
}

std::string Tower::format(const TowerElem& a_in) const {
  TowerElem a = lift(a_in);
  return format_with(a, num_gens());
}

TowerElem Tower::parse(std::string_view text) const {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty tower element");
  Cursor cur{s};
  const FiniteField& F = *field_;
  TowerElem acc = zero();
  int prec = LSeries::kExact;
  bool first = true;
  while (!cur.done()) {
    bool negate = false;
    if (!first) {
      if (cur.eat('-'))
        negate = true;
      else
        cur.expect('+');
    } else if (cur.eat('-')) {
      negate = true;
    }
    first = false;
    if (cur.peek() == 'O') {
      ++cur.i;
      cur.expect('(');
      cur.expect('t');
      cur.expect('^');
      prec = static_cast<int>(cur.integer());
      cur.expect(')');
      continue;
    }
    Elem coef = 1;
    int tdeg = 0;
    TowerElem zmono = one();
    bool more = true;
    while (more) {
      char c = cur.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coef = F.mul(coef, F.from_int(cur.integer()));
      } else if (c == '(') {
        ++cur.i;
        coef = F.mul(coef, F.parse(cur.balanced()));
      } else if (c == 't') {
        ++cur.i;
        if (!laurent_) cur.fail("t is not defined in this tower");
        int d = 1;
        if (cur.eat('^')) d = static_cast<int>(cur.integer());
        tdeg += d;
      } else if (c == 'z') {
        ++cur.i;
        long long j = cur.integer();
        if (j < 1 || j > num_gens()) cur.fail("unknown generator z" + std::to_string(j));
        long long d = 1;
        if (cur.eat('^')) d = cur.integer();
        if (d < 0) cur.fail("negative generator power");
        zmono = mul(zmono, gen(static_cast<int>(j - 1)).pow(d));
      } else {
        cur.fail("unexpected character");
      }
      more = cur.eat('*');
    }
    TowerElem term = mul(t_pow(tdeg, negate ? F.neg(coef) : coef), zmono);
    acc = add(acc, term);
  }
  if (prec < LSeries::kExact) {
    for (auto& c : acc.coords()) {
      c.prec = std::min(c.prec, prec);
      c = ls_normalize(std::move(c));
    }
  }
  return acc;
}

std::string Tower::descriptor() const {
  const FiniteField& F = *field_;
  std::string out = "Fq(" + std::to_string(F.p()) + "," + std::to_string(F.m()) + ",[";
  for (std::size_t i = 0; i < F.modulus().size(); ++i) {
    if (i) out += ",";
    out += std::to_string(F.modulus()[i]);
  }
  out += "])";
  if (laurent_) {
    out += "[t;" + std::to_string(e_) + ";" + std::to_string(uprec_);
    if (eps_ != 1) out += ";eps=" + F.to_string(eps_);
    out += "]";
  }
  for (int j = 0; j < num_gens(); ++j) {
    const Rule& r = rules_[static_cast<std::size_t>(j)];
    out += "[z" + std::to_string(j + 1) + ":" + (r.kind == RuleKind::Kummer ? "K(" : "A(") + std::to_string(r.degree) +
           ";" + format_with(from_coords(r.rhs), j) + ")]";
  }
  return out;
}

TowerPtr Tower::parse_descriptor(std::string_view text) {
  const std::string s = strip_spaces(text);
  Cursor cur{s};
  if (s.rfind("Fq(", 0) != 0) cur.fail("descriptor must start with Fq(");
  cur.i = 3;
  int p = static_cast<int>(cur.integer());
  cur.expect(',');
  int m = static_cast<int>(cur.integer());
  cur.expect(',');
  cur.expect('[');
  std::vector<int> modulus;
  if (!cur.eat(']')) {
    do modulus.push_back(static_cast<int>(cur.integer()));
    while (cur.eat(','));
    cur.expect(']');
  }
  cur.expect(')');
  FieldPtr field = FiniteField::make(p, m, modulus);
  bool laurent = false;
  int e = 1, uprec = 1;
  Elem eps = 1;
  if (s.compare(cur.i, 3, "[t;") == 0) {
    cur.i += 3;
    laurent = true;
    e = static_cast<int>(cur.integer());
    cur.expect(';');
    uprec = static_cast<int>(cur.integer());
    if (cur.eat(';')) {
      if (s.compare(cur.i, 4, "eps=") != 0) cur.fail("expected eps=");
      cur.i += 4;
      std::size_t end = s.find(']', cur.i);
      if (end == std::string::npos) cur.fail("unterminated uniformizer section");
      eps = field->parse(s.substr(cur.i, end - cur.i));
      cur.i = end;
    }
    cur.expect(']');
  }
  TowerPtr tower = make(field, laurent, e, uprec, eps, {});
  int j = 0;
  while (!cur.done()) {
    cur.expect('[');
    cur.expect('z');
    if (cur.integer() != j + 1) cur.fail("generators must be numbered consecutively");
    cur.expect(':');
    RuleKind kind;
    if (cur.eat('K'))
      kind = RuleKind::Kummer;
    else if (cur.eat('A'))
      kind = RuleKind::Additive;
    else
      throw Error(ErrorCode::UnsupportedExtension, "unknown adjunction kind in \"" + s + "\"");
    cur.expect('(');
    int degree = static_cast<int>(cur.integer());
    cur.expect(';');
    std::string rhs_text = cur.balanced();
    cur.expect(']');
    TowerElem rhs = tower->parse(rhs_text);
    auto rules = tower->rules_;
    rules.push_back(Rule{kind, degree, rhs.coords()});
    auto next = std::make_shared<Tower>(field, laurent, e, uprec, eps, std::move(rules));
    next->parent_ = tower;
    next->embed_ = EmbedKind::Pad;
    tower = next;
    ++j;
  }
  return tower;
}

}  // namespace chromalg
