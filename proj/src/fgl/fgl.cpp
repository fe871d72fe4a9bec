#include "chromalg/fgl.hpp"

#include <map>
#include <set>

namespace chromalg {

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Workspace ring: X, Y of weight 1 plus weight-0 symbols for unassigned v_i.
struct LogRing {
  VarTablePtr vars;
  std::map<int, std::size_t> sym;  // v-index -> variable index
};

LogRing make_log_ring(int N, const std::vector<int>& symbolic, int p) {
  std::vector<VarSpec> vs{{"X", 0, Parity::Even, 0, 1}, {"Y", 0, Parity::Even, 0, 1}};
  LogRing R;
  for (int i : symbolic) {
    R.sym[i] = vs.size();
    vs.push_back(VarSpec{"v" + std::to_string(i), static_cast<int>(2 * (ipow(p, i) - 1)), Parity::Even, 0, 0});
  }
  R.vars = VarTable::make(std::move(vs), N);
  return R;
}

// exp(log X + log Y) where log X = X + sum_k logc[k] X^(p^k).
QSeries law_from_log(const LogRing& R, int p, int N, const std::map<int, QSeries>& logc) {
  RationalRing Q;
  const QSeries X = QSeries::var(R.vars, Q, 0), Y = QSeries::var(R.vars, Q, 1);
  // Inverse of the logarithm by fixed-point iteration g = X - sum m_k g^(p^k).
  QSeries g = X;
  for (int it = 0; it < N; ++it) {
    QSeries next = X;
    for (const auto& [k, m] : logc) next -= g.pow(static_cast<int>(ipow(p, k))) * m;
    if (next == g) break;
    g = next;
  }
  QSeries Z = X + Y;
  for (const auto& [k, m] : logc) {
    int d = static_cast<int>(ipow(p, k));
    Z += (X.pow(d) + Y.pow(d)) * m;
  }
  return g.substitute_var(0, Z);
}

FGL reduce_law(const QSeries& FQ, const LogRing& R, const std::map<int, TowerElem>& values, const TowerPtr& tower,
               int p, int N) {
  auto V = xy_table(N);
  std::vector<TSeries::Term> terms;
  std::map<std::pair<std::size_t, int>, TowerElem> pw;
  auto power = [&](std::size_t var, int vidx, int e) -> TowerElem {
    auto key = std::make_pair(var, e);
    auto it = pw.find(key);
    if (it != pw.end()) return it->second;
    TowerElem r = values.at(vidx).pow(e);
    pw.emplace(key, r);
    return r;
  };
  for (const auto& [m, c] : FQ.terms()) {
    long long r = c.reduce_mod_p(p);
    if (r == 0) continue;
    TowerElem coef = tower->from_int(r);
    for (const auto& [vidx, var] : R.sym)
      if (m.e[var]) coef = coef * power(var, vidx, m.e[var]);
    Monomial mm;
    mm.e[0] = m.e[0];
    mm.e[1] = m.e[1];
    terms.push_back({mm, coef});
  }
  FGL out;
  out.F = TSeries::from_terms(V, tower, std::move(terms));
  out.p = p;
  out.N = N;
  return out;
}

}  // namespace

VarTablePtr xy_table(int N) { return total_degree_table({"X", "Y"}, N); }

VarTablePtr x_table(int N) { return univariate("X", N); }

std::vector<QSeries> hazewinkel_log(int p, int depth) {
  std::vector<VarSpec> vs;
  for (int i = 1; i <= depth; ++i)
    vs.push_back(VarSpec{"v" + std::to_string(i), static_cast<int>(2 * (ipow(p, i) - 1)), Parity::Even, 0, 1});
  auto V = VarTable::make(std::move(vs));
  RationalRing Q;
  std::vector<QSeries> m{QSeries::one(V, Q)};
  for (int k = 1; k <= depth; ++k) {
    QSeries acc(V, Q);
    for (int i = 0; i < k; ++i) acc += m[i] * QSeries::var(V, Q, static_cast<std::size_t>(k - i - 1), static_cast<int>(ipow(p, i)));
    m.push_back(acc.scale(PLocalRational(1, p)));
  }
  return m;
}

FGL specialize_hazewinkel(int p, const std::vector<VAssignment>& assignments, const TowerPtr& tower, int N) {
  if (!is_prime(static_cast<std::uint64_t>(p))) throw Error(ErrorCode::ConfigError, "p must be prime");
  if (tower->p() != p) throw Error(ErrorCode::BaseMismatch, "coefficient tower has the wrong characteristic");
  std::map<int, VAssignment> vals;
  for (const auto& a : assignments) {
    if (a.index < 1) throw Error(ErrorCode::ConfigError, "v-index must be positive");
    if (a.integer.has_value() == a.value.has_value())
      throw Error(ErrorCode::ConfigError, "assignment needs exactly one value");
    bool zero = a.integer ? *a.integer == 0 : a.value->is_zero();
    if (!zero && a.u_power != -(ipow(p, a.index) - 1))
      throw Error(ErrorCode::GradingMismatch, "v" + std::to_string(a.index) + " has degree " +
                                                  std::to_string(2 * (ipow(p, a.index) - 1)) + " but is sent to u^" +
                                                  std::to_string(a.u_power) + " times a degree-0 element");
    if (!vals.emplace(a.index, a).second) throw Error(ErrorCode::ConfigError, "duplicate assignment");
  }
  int depth = 0;
  while (ipow(p, depth + 1) < N) ++depth;
  std::vector<int> symbolic;
  for (const auto& [i, a] : vals)
    if (a.value && i <= depth) symbolic.push_back(i);
  LogRing R = make_log_ring(N, symbolic, p);
  RationalRing Q;
  auto vvalue = [&](int i, long long power) -> QSeries {
    auto it = vals.find(i);
    if (it == vals.end()) return QSeries(R.vars, Q);
    if (it->second.integer) return QSeries::constant(R.vars, Q, PLocalRational(*it->second.integer).pow(power));
    return QSeries::var(R.vars, Q, R.sym.at(i), static_cast<int>(power));
  };
  std::vector<QSeries> m{QSeries::one(R.vars, Q)};
  std::map<int, QSeries> logc;
  for (int k = 1; k <= depth; ++k) {
    QSeries acc(R.vars, Q);
    for (int i = 0; i < k; ++i) acc += m[i] * vvalue(k - i, ipow(p, i));
    m.push_back(acc.scale(PLocalRational(1, p)));
    if (!m.back().is_zero()) logc.emplace(k, m.back());
  }
  QSeries FQ = law_from_log(R, p, N, logc);
  std::map<int, TowerElem> tv;
  for (int i : symbolic) tv.emplace(i, tower->lift(*vals.at(i).value));
  FGL out = reduce_law(FQ, R, tv, tower, p, N);
  out.provenance = Provenance::HazewinkelSpecialized;
  std::string d;
  for (const auto& [i, a] : vals) {
    if (!d.empty()) d += ",";
    d += "v" + std::to_string(i) + "=" + (a.integer ? std::to_string(*a.integer) : a.value->to_string());
  }
  out.detail = d.empty() ? "all v=0" : d;
  return out;
}

FGL honda_fgl(int n, const TowerPtr& tower, int N) {
  const int p = tower->p();
  if (n < 1) throw Error(ErrorCode::ConfigError, "height must be positive");
  if (tower->field()->m() % n != 0)
    throw Error(ErrorCode::BaseMismatch, "coefficient field does not contain F_{p^" + std::to_string(n) + "}");
  LogRing R = make_log_ring(N, {}, p);
  RationalRing Q;
  std::map<int, QSeries> logc;
  for (int i = 1; ipow(p, n * i) < N; ++i)
    logc.emplace(n * i, QSeries::constant(R.vars, Q, PLocalRational(1, ipow(p, i))));
  FGL out = reduce_law(law_from_log(R, p, N, logc), R, {}, tower, p, N);
  out.provenance = Provenance::Honda;
  out.detail = "H" + std::to_string(n);
  return out;
}

FGL e_law(int n, const TowerPtr& tower, int N) {
  const int p = tower->p();
  if (!tower->is_laurent()) throw Error(ErrorCode::BaseMismatch, "the E-law needs a tower with u");
  return specialize_hazewinkel(p,
                               {VAssignment::of_elem(n, tower->u_pow(1), -static_cast<int>(ipow(p, n) - 1)),
                                VAssignment::of_int(n + 1, 1, -static_cast<int>(ipow(p, n + 1) - 1))},
                               tower, N);
}

FGL additive_fgl(const TowerPtr& tower, int N) {
  auto V = xy_table(N);
  FGL out{TSeries::var(V, tower, 0) + TSeries::var(V, tower, 1), tower->p(), N, Provenance::User, "additive"};
  return out;
}

FGL multiplicative_fgl(const TowerPtr& tower, int N) {
  auto V = xy_table(N);
  auto X = TSeries::var(V, tower, 0), Y = TSeries::var(V, tower, 1);
  return FGL{X + Y + X * Y, tower->p(), N, Provenance::User, "multiplicative"};
}

FGL user_fgl(TSeries F, int p) {
  if (F.vars()->size() != 2) throw Error(ErrorCode::VarMismatch, "a formal group law has two variables");
  int N = F.vars()->total_cap();
  if (N <= 0) throw Error(ErrorCode::VarMismatch, "law must be truncated by total degree");
  return FGL{std::move(F), p, N, Provenance::User, "user"};
}

FGL FGL::lift_to(const TowerPtr& ext) const {
  if (ext.get() == tower().get()) return *this;
  FGL out = *this;
  out.F = F.map_coeffs<TowerElem>(ext, [&](const TowerElem& c) { return ext->lift(c); });
  return out;
}

TSeries formal_sum(const FGL& F, const std::vector<TSeries>& summands) {
  if (summands.empty()) throw Error(ErrorCode::VarMismatch, "formal sum of nothing");
  for (const auto& s : summands)
    if (!s.constant_term_is_zero()) throw Error(ErrorCode::NonzeroConstantTerm, "summand has a constant term");
  const FGL G = F.lift_to(summands.front().ctx());
  TSeries acc = summands.front();
  for (std::size_t i = 1; i < summands.size(); ++i) acc = G.F.substitute({acc, summands[i]});
  return acc;
}

TSeries p_series(const FGL& F) {
  auto V = x_table(F.N);
  TSeries X = TSeries::var(V, F.tower(), 0);
  return formal_sum(F, std::vector<TSeries>(static_cast<std::size_t>(F.p), X));
}

std::optional<int> height(const FGL& F) {
  TSeries s = p_series(F);
  if (s.is_zero()) return std::nullopt;
  int d = s.terms().front().first.e[0];
  int h = 0;
  long long q = 1;
  while (q < d) {
    q *= F.p;
    ++h;
  }
  if (q != d) return std::nullopt;
  return h;
}

namespace {

std::string lowest_term(const TSeries& diff) {
  if (diff.is_zero()) return "";
  return TSeries::from_terms(diff.vars(), diff.ctx(), {diff.terms().front()}).to_string();
}

}  // namespace

std::vector<AxiomFailure> check_fgl_axioms(const FGL& F) {
  std::vector<AxiomFailure> out;
  const auto& T = F.tower();
  auto V1 = x_table(F.N);
  auto X1 = TSeries::var(V1, T, 0);
  TSeries zero1(V1, T);
  if (auto w = lowest_term(F.F.substitute({X1, zero1}) - X1); !w.empty()) out.push_back({"unit F(X,0)=X", w});
  if (auto w = lowest_term(F.F.substitute({zero1, X1}) - X1); !w.empty()) out.push_back({"unit F(0,Y)=Y", w});
  auto V2 = F.F.vars();
  auto X = TSeries::var(V2, T, 0), Y = TSeries::var(V2, T, 1);
  if (auto w = lowest_term(F.F.substitute({Y, X}) - F.F); !w.empty()) out.push_back({"commutativity", w});
  auto V3 = total_degree_table({"X", "Y", "Z"}, F.N);
  auto X3 = TSeries::var(V3, T, 0), Y3 = TSeries::var(V3, T, 1), Z3 = TSeries::var(V3, T, 2);
  TSeries fxy = F.F.substitute({X3, Y3}), fyz = F.F.substitute({Y3, Z3});
  if (auto w = lowest_term(F.F.substitute({fxy, Z3}) - F.F.substitute({X3, fyz})); !w.empty())
    out.push_back({"associativity", w});
  return out;
}

bool strict_height_at_least(const FGL& F, int n) {
  const int bound = static_cast<int>(ipow(F.p, n));
  auto V = F.F.vars();
  TSeries d = F.F - TSeries::var(V, F.tower(), 0) - TSeries::var(V, F.tower(), 1);
  return d.truncate_total(bound).is_zero();
}

HondaEndo HondaEndo::make(const FGL& H, int n, std::vector<TowerElem> coeffs, int N) {
  if (coeffs.empty()) throw Error(ErrorCode::CoefficientNotInFpn, "no coefficients");
  const TowerPtr& T = H.tower();
  const FiniteField& F = *T->field();
  std::vector<TSeries> summands;
  auto V = x_table(N);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    TowerElem a = T->lift(coeffs[i]);
    const auto& c = a.coords();
    bool constant = true;
    for (std::size_t k = 1; k < c.size(); ++k) constant = constant && c[k].empty() && c[k].prec >= LSeries::kExact;
    const LSeries& c0 = c[0];
    constant = constant && c0.prec >= LSeries::kExact && (c0.empty() || (c0.val == 0 && c0.coef.size() == 1));
    if (!constant || (!c0.empty() && !F.in_subfield(c0.coef[0], n)))
      throw Error(ErrorCode::CoefficientNotInFpn, "a_" + std::to_string(i) + " = " + a.to_string() +
                                                      " is not in F_{p^" + std::to_string(n) + "}");
    coeffs[i] = a;
    long long d = ipow(H.p, static_cast<int>(i));
    if (d < N && !a.is_zero()) summands.push_back(TSeries::var(V, T, 0, static_cast<int>(d)).scale(a));
  }
  HondaEndo e;
  e.H = H;
  e.n = n;
  e.coeffs = std::move(coeffs);
  e.series = summands.empty() ? TSeries(V, T) : formal_sum(H, summands);
  return e;
}

bool HondaEndo::is_endomorphism() const {
  auto V2 = H.F.vars();
  const auto& T = H.tower();
  TSeries lhs = series.substitute({H.F});
  TSeries tX = series.substitute({TSeries::var(V2, T, 0)}), tY = series.substitute({TSeries::var(V2, T, 1)});
  TSeries rhs = H.F.substitute({tX, tY});
  return lhs == rhs;
}

TSeries HondaEndo::add(const HondaEndo& o) const { return formal_sum(H, {series, o.series}); }

}  // namespace chromalg
