#include <algorithm>
#include <array>
#include <numeric>

#include "chromalg/error.hpp"
#include "chromalg/hopfalg.hpp"

namespace chromalg {

FiniteGroup FiniteGroup::cyclic(int m) {
  FiniteGroup G;
  G.name = "Z/" + std::to_string(m);
  G.order = m;
  G.table.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) G.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % m;
    G.inverse.push_back((m - a) % m);
    G.names.push_back(a == 0 ? "e" : a == 1 ? "g" : "g^" + std::to_string(a));
  }
  G.sign.assign(static_cast<std::size_t>(m), 0);
  return G;
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> a{0, 1, 2};
  do perms.push_back(a);
  while (std::next_permutation(a.begin(), a.end()));
  FiniteGroup G;
  G.name = "S3";
  G.order = 6;
  auto index = [&](const std::array<int, 3>& x) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), x) - perms.begin());
  };
  G.table.assign(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i) {
    const auto& x = perms[static_cast<std::size_t>(i)];
    for (int j = 0; j < 6; ++j) {
      const auto& y = perms[static_cast<std::size_t>(j)];
      std::array<int, 3> c{x[static_cast<std::size_t>(y[0])], x[static_cast<std::size_t>(y[1])], x[static_cast<std::size_t>(y[2])]};
      G.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = index(c);
    }
    std::array<int, 3> inv{};
    for (int k = 0; k < 3; ++k) inv[static_cast<std::size_t>(x[static_cast<std::size_t>(k)])] = k;
    G.inverse.push_back(index(inv));
    int s = 0;
    for (int u = 0; u < 3; ++u)
      for (int v = u + 1; v < 3; ++v) s ^= x[static_cast<std::size_t>(u)] > x[static_cast<std::size_t>(v)] ? 1 : 0;
    G.sign.push_back(s);
    G.names.push_back("[" + std::to_string(x[0]) + std::to_string(x[1]) + std::to_string(x[2]) + "]");
  }
  return G;
}

// ------------------------------------------------------------ ActedRing

ActedRing::ActedRing(std::string name, FieldPtr field, int k, std::vector<int> frob, std::vector<Elem> s_image)
    : name_(std::move(name)), F_(std::move(field)), k_(k), frob_(std::move(frob)), s_image_(std::move(s_image)) {
  if (k_ < 1) throw Error(ErrorCode::ConfigError, "truncation order must be positive");
  if (frob_.size() != s_image_.size()) throw Error(ErrorCode::ConfigError, "one action entry per group element");
  for (auto& s : s_image_) {
    s.resize(static_cast<std::size_t>(k_), 0);
    if (s[0] != 0) throw Error(ErrorCode::ConfigError, "image of s must lie in (s)");
  }
}

ActedRing::Elem ActedRing::one() const { return from_fq(1); }

ActedRing::Elem ActedRing::from_fq(FiniteField::Elem c) const {
  Elem r = zero();
  r[0] = c;
  return r;
}

ActedRing::Elem ActedRing::s() const {
  Elem r = zero();
  if (k_ > 1) r[1] = 1;
  return r;
}

ActedRing::Elem ActedRing::add(const Elem& a, const Elem& b) const {
  Elem r = zero();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F_->add(a[i], b[i]);
  return r;
}

ActedRing::Elem ActedRing::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

ActedRing::Elem ActedRing::neg(const Elem& a) const {
  Elem r = zero();
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F_->neg(a[i]);
  return r;
}

ActedRing::Elem ActedRing::mul(const Elem& a, const Elem& b) const {
  Elem r = zero();
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < r.size(); ++j) r[i + j] = F_->add(r[i + j], F_->mul(a[i], b[j]));
  }
  return r;
}

ActedRing::Elem ActedRing::act(const Elem& a, int g) const {
  const auto gi = static_cast<std::size_t>(g);
  Elem r = zero(), pw = one();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) {
      const auto c = F_->frobenius(a[i], frob_[gi]);
      for (std::size_t j = 0; j < r.size(); ++j) r[j] = F_->add(r[j], F_->mul(c, pw[j]));
    }
    pw = mul(pw, s_image_[gi]);
  }
  return r;
}

ActedRing::Elem ActedRing::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint32_t> d(0, F_->order() - 1);
  Elem r = zero();
  for (auto& c : r) c = d(rng);
  return r;
}

std::string ActedRing::to_string(const Elem& a) const {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += " + ";
    std::string c = F_->to_string(a[i]);
    if (i == 0)
      out += c;
    else
      out += (c == "1" ? "" : "(" + c + ")*") + (i == 1 ? std::string("s") : "s^" + std::to_string(i));
  }
  return out.empty() ? "0" : out;
}

std::vector<ActedRing::Elem> ActedRing::generators() const {
  std::vector<Elem> g;
  if (k_ > 1) g.push_back(s());
  if (F_->m() > 1) g.push_back(from_fq(F_->gen()));
  g.push_back(one());
  return g;
}

// ------------------------------------------------------------ FunctionHopf

FunctionHopf::FunctionHopf(FiniteGroup G, ActedRing R, std::uint64_t seed)
    : G_(std::move(G)), R_(std::move(R)), seed_(seed) {}

bool FunctionHopf::action_is_valid() const {
  for (const auto& r : R_.generators()) {
    if (R_.act(r, G_.identity) != r) return false;
    for (int a = 0; a < G_.order; ++a)
      for (int b = 0; b < G_.order; ++b)
        if (R_.act(R_.act(r, a), b) != R_.act(r, G_.mul(a, b))) return false;
  }
  return true;
}

FunctionHopf::Elem FunctionHopf::delta(int g, const Base& r) const {
  Elem a(static_cast<std::size_t>(G_.order), R_.zero());
  a[static_cast<std::size_t>(g)] = r;
  return a;
}

FunctionHopf::Elem FunctionHopf::random(std::mt19937_64& rng) const {
  Elem a;
  for (int g = 0; g < G_.order; ++g) a.push_back(R_.random(rng));
  return a;
}

FunctionHopf::Elem2 FunctionHopf::m(const Elem& a, const Elem& b) const {
  Elem2 x(static_cast<std::size_t>(G_.order * G_.order));
  for (int g1 = 0; g1 < G_.order; ++g1)
    for (int g2 = 0; g2 < G_.order; ++g2)
      x[idx2(g1, g2)] = R_.mul(R_.act(a[static_cast<std::size_t>(g1)], g2), b[static_cast<std::size_t>(g2)]);
  return x;
}

std::vector<std::pair<std::string, FunctionHopf::Elem>> FunctionHopf::samples() const {
  std::vector<std::pair<std::string, Elem>> out;
  for (int g = 0; g < G_.order; ++g) out.push_back({"delta_" + G_.names[static_cast<std::size_t>(g)], delta(g, R_.one())});
  for (const auto& r : R_.generators()) out.push_back({"eta_L(" + R_.to_string(r) + ")", eta_l(r)});
  std::mt19937_64 rng(seed_);
  for (int i = 0; i < 3; ++i) out.push_back({"random" + std::to_string(i), random(rng)});
  return out;
}

std::vector<FunctionHopf::Base> FunctionHopf::base_samples() const {
  auto g = R_.generators();
  std::mt19937_64 rng(seed_ ^ 0x9e3779b97f4a7c15ULL);
  g.push_back(R_.random(rng));
  return g;
}

FunctionHopf::Elem FunctionHopf::mul(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = R_.mul(a[i], b[i]);
  return r;
}

FunctionHopf::Elem2 FunctionHopf::mul2(const Elem2& a, const Elem2& b) const { return mul(a, b); }

FunctionHopf::Elem FunctionHopf::eta_l(const Base& r) const {
  Elem a;
  for (int g = 0; g < G_.order; ++g) a.push_back(R_.act(r, g));
  return a;
}

FunctionHopf::Elem FunctionHopf::eta_r(const Base& r) const { return Elem(static_cast<std::size_t>(G_.order), r); }

FunctionHopf::Elem2 FunctionHopf::eta_l2(const Base& r) const {
  Elem2 x(static_cast<std::size_t>(G_.order * G_.order));
  for (int g1 = 0; g1 < G_.order; ++g1)
    for (int g2 = 0; g2 < G_.order; ++g2) x[idx2(g1, g2)] = R_.act(r, G_.mul(g1, g2));
  return x;
}

FunctionHopf::Elem2 FunctionHopf::eta_r2(const Base& r) const {
  return Elem2(static_cast<std::size_t>(G_.order * G_.order), r);
}

FunctionHopf::Elem FunctionHopf::chi(const Elem& a) const {
  Elem r;
  for (int g = 0; g < G_.order; ++g) r.push_back(R_.act(a[static_cast<std::size_t>(G_.inverse[static_cast<std::size_t>(g)])], g));
  return r;
}

FunctionHopf::Elem2 FunctionHopf::psi(const Elem& a) const {
  Elem2 x(static_cast<std::size_t>(G_.order * G_.order));
  for (int g1 = 0; g1 < G_.order; ++g1)
    for (int g2 = 0; g2 < G_.order; ++g2) x[idx2(g1, g2)] = a[static_cast<std::size_t>(G_.mul(g1, g2))];
  return x;
}

FunctionHopf::Elem FunctionHopf::eps_left(const Elem2& x) const {
  Elem r;
  for (int g = 0; g < G_.order; ++g) r.push_back(x[idx2(G_.identity, g)]);
  return r;
}

FunctionHopf::Elem FunctionHopf::eps_right(const Elem2& x) const {
  Elem r;
  for (int g = 0; g < G_.order; ++g) r.push_back(x[idx2(g, G_.identity)]);
  return r;
}

FunctionHopf::Elem3 FunctionHopf::psi_left(const Elem2& x) const {
  const int o = G_.order;
  Elem3 y(static_cast<std::size_t>(o * o * o));
  for (int a = 0; a < o; ++a)
    for (int b = 0; b < o; ++b)
      for (int c = 0; c < o; ++c) y[idx3(a, b, c)] = x[idx2(G_.mul(a, b), c)];
  return y;
}

FunctionHopf::Elem3 FunctionHopf::psi_right(const Elem2& x) const {
  const int o = G_.order;
  Elem3 y(static_cast<std::size_t>(o * o * o));
  for (int a = 0; a < o; ++a)
    for (int b = 0; b < o; ++b)
      for (int c = 0; c < o; ++c) y[idx3(a, b, c)] = x[idx2(a, G_.mul(b, c))];
  return y;
}

FunctionHopf::Elem FunctionHopf::mu_chi_left(const Elem2& x) const {
  Elem r;
  for (int g = 0; g < G_.order; ++g) r.push_back(x[idx2(G_.inverse[static_cast<std::size_t>(g)], g)]);
  return r;
}

FunctionHopf::Elem FunctionHopf::mu_chi_right(const Elem2& x) const {
  Elem r;
  for (int g = 0; g < G_.order; ++g) r.push_back(R_.act(x[idx2(g, G_.inverse[static_cast<std::size_t>(g)])], g));
  return r;
}

std::string FunctionHopf::describe(const Elem& a) const {
  std::string out = "[";
  for (int g = 0; g < G_.order; ++g) {
    if (g) out += ", ";
    out += G_.names[static_cast<std::size_t>(g)] + ": " + R_.to_string(a[static_cast<std::size_t>(g)]);
  }
  return out + "]";
}

bool FunctionHopf::m_is_isomorphism() const {
  const int o = G_.order;
  // Basis to basis.
  for (int g1 = 0; g1 < o; ++g1)
    for (int g2 = 0; g2 < o; ++g2) {
      Elem2 x = m(delta(g1, R_.one()), delta(g2, R_.one()));
      for (int h1 = 0; h1 < o; ++h1)
        for (int h2 = 0; h2 < o; ++h2) {
          const Base want = (h1 == g1 && h2 == g2) ? R_.one() : R_.zero();
          if (x[idx2(h1, h2)] != want) return false;
        }
    }
  // Multiplicative and balanced over R on samples.
  auto s = samples();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const auto& a = s[i].second;
    const auto& b = s[i + 1].second;
    const auto& c = s[(i + 2) % s.size()].second;
    const auto& d = s[(i + 3) % s.size()].second;
    if (mul2(m(a, b), m(c, d)) != m(mul(a, c), mul(b, d))) return false;
    for (const auto& r : base_samples())
      if (m(mul(a, eta_r(r)), b) != m(a, mul(eta_l(r), b))) return false;
  }
  return true;
}

std::vector<FunctionHopf> standard_function_hopfs(std::uint64_t seed) {
  auto F3 = FiniteField::make(3, 1), F9 = FiniteField::make(3, 2), F27 = FiniteField::make(3, 3);
  using E = ActedRing::Elem;
  std::vector<FunctionHopf> out;
  auto Z2 = FiniteGroup::cyclic(2), Z3 = FiniteGroup::cyclic(3), S3 = FiniteGroup::symmetric3();
  out.emplace_back(Z2, ActedRing("F3[s]/(s^2), s->-s", F3, 2, {0, 0}, {E{0, 1}, E{0, 2}}), seed);
  out.emplace_back(Z2, ActedRing("F9, Frobenius", F9, 1, {0, 1}, {E{0}, E{0}}), seed);
  out.emplace_back(Z3, ActedRing("F27, Frobenius", F27, 1, {0, 1, 2}, {E{0}, E{0}, E{0}}), seed);
  out.emplace_back(Z3, ActedRing("F3[s]/(s^3), s->s+s^2", F3, 3, {0, 0, 0}, {E{0, 1, 0}, E{0, 1, 1}, E{0, 1, 2}}), seed);
  std::vector<int> frob;
  std::vector<E> sim, one_s;
  for (int g = 0; g < 6; ++g) {
    const int sg = S3.sign[static_cast<std::size_t>(g)];
    frob.push_back(sg);
    sim.push_back(E{0});
    one_s.push_back(E{0, sg ? 2u : 1u});
  }
  out.emplace_back(S3, ActedRing("F9, Frobenius through the sign", F9, 1, frob, sim), seed);
  out.emplace_back(S3, ActedRing("F3[s]/(s^2), s->sign*s", F3, 2, std::vector<int>(6, 0), one_s), seed);
  return out;
}

FunctionHopfValues function_hopf_maps(const FunctionHopf& C, const FunctionHopf::Elem& a, const FunctionHopf::Elem& b,
                                      int g1, int g2) {
  return {C.at2(C.m(a, b), g1, g2), C.chi(a)[static_cast<std::size_t>(g1)], C.eps(a), C.at2(C.psi(a), g1, g2)};
}

}  // namespace chromalg
