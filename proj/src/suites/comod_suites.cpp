#include "chromalg/error.hpp"
#include "runner.hpp"

namespace chromalg {

using detail::from_checks;
using detail::ipow;
using detail::run_check;
using detail::Verdict;
using detail::verdict;

namespace {

Verdict equivalence_instance(const TwistedModule& T, const TwistedModule& other) {
  if (auto v = from_checks(check_twisted(T)); !v.ok) return v;
  const GroupComodule M = twisted_to_comod(T);
  if (auto v = from_checks(check_comodule(M)); !v.ok) return v;
  if (comod_to_twisted(M).action != T.action) return {false, "twisted -> comodule -> twisted"};
  if (twisted_to_comod(comod_to_twisted(M)).rho != M.rho) return {false, "comodule -> twisted -> comodule"};
  const auto prod = tensor(T, other);
  if (twisted_to_comod(prod).rho != tensor(M, twisted_to_comod(other)).rho) return {false, "tensor product"};
  if (comod_to_twisted(tensor(M, twisted_to_comod(other))).action != prod.action) return {false, "tensor product back"};
  return {};
}

TowerElem random_elem(const Tower& T, std::mt19937_64& rng) {
  return T.from_fq(static_cast<FiniteField::Elem>(rng() % T.field()->order()));
}

Verdict lens_values(const Comodule& M, int p, int n) {
  if (auto v = from_checks(check_comodule(M)); !v.ok) return v;
  const auto Q = extract_milnor(M, n);
  const std::size_t y = lens_index(p, n, true, 0);
  for (int i = 0; i < n; ++i)
    for (std::size_t l = 0; l < M.rank(); ++l) {
      const auto& c = Q.Q[static_cast<std::size_t>(i)][y][l];
      const bool want = l == lens_index(p, n, false, static_cast<int>(ipow(p, i)));
      if (want ? !c.is_one() : !c.is_zero()) return {false, "(y)Q" + std::to_string(i) + " at " + M.names[l]};
    }
  return {};
}

Verdict same_parts(const CLambdaComodule& a, const CLambdaComodule& b) {
  if (a.c.rho != b.c.rho) return {false, "C part"};
  if (a.lambda.rho != b.lambda.rho) return {false, "Lambda part"};
  return {};
}

Verdict round_trips(const Comodule& M, const CompositeHopf& H) {
  if (auto v = from_checks(check_comodule(M)); !v.ok) return v;
  const auto parts = split(M, H);
  if (!compatibility_check(parts).ok) return {false, "split pair is not compatible"};
  if (assemble(parts).rho != M.rho) return {false, "assemble o split"};
  if (auto v = same_parts(split(assemble(parts), H), parts); !v.ok) return {false, "split o assemble: " + v.witness};
  return from_checks(nine_diagram_check(parts));
}

}  // namespace

Report run_comod(const RunConfig& cfg) {
  validate(cfg, {"equivalence", "milnor", "assembly", "all"});
  Report r{"comod", cfg, {}};
  const int p = cfg.p, n = cfg.n;
  const bool all = cfg.selection == "all";
  const auto Tp = Tower::finite(FiniteField::make(p, 1));

  if (all || cfg.selection == "equivalence") {
    run_check(r, "comod.equivalence.random", "comod:finite-groups", [&] {
      auto rng = check_rng(cfg.seed, "comod.equivalence.random");
      const auto hs = standard_function_hopfs(cfg.seed);
      for (int s = 0; s < cfg.samples; ++s) {
        const FunctionHopf& C = hs[static_cast<std::size_t>(s) % hs.size()];
        const int o = C.group().order;
        const auto T = random_twisted(C, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(o + 1)), rng);
        const auto other = random_twisted(C, 1 + static_cast<int>(rng() % 2), rng);
        if (auto v = equivalence_instance(T, other); !v.ok) return Verdict{false, C.name() + " #" + std::to_string(s) + ": " + v.witness};
      }
      return Verdict{};
    });
    run_check(r, "comod.equivalence.trivial", "comod:finite-groups", [&] {
      for (const auto& C : standard_function_hopfs(cfg.seed))
        if (auto v = equivalence_instance(trivial_twisted(C, 2), trivial_twisted(C, 1)); !v.ok) return v;
      return Verdict{};
    });
  }

  if (all || cfg.selection == "milnor") {
    run_check(r, "comod.milnor.lens_values", "comod:milnor-lens", [&] {
      for (int k = 1; k <= n; ++k) {
        auto H = composite_hopf(p, k, Tp);
        for (const Comodule& M : {lens_lambda_comodule(H), lens_comodule(H)})
          if (auto v = lens_values(M, p, k); !v.ok) return v;
      }
      return Verdict{};
    });
    run_check(r, "comod.milnor.anticommutation", "comod:milnor-anticommute", [&] {
      auto rng = check_rng(cfg.seed, "comod.milnor.anticommutation");
      auto H = composite_hopf(p, n, Tp);
      for (const Comodule& M : {lens_lambda_comodule(H), lens_comodule(H)})
        if (auto c = extract_milnor(M, n).anticommutation(); !c.ok) return Verdict{false, M.names[0] + " lens: " + c.witness};
      auto Lam = exterior_hopf(p, n, Tower::finite(FiniteField::make(p, 2)));
      for (int s = 0; s < 2 * cfg.samples; ++s) {
        const auto M = random_lambda_comodule(Lam, 1 + s % 2, rng);
        if (auto c = extract_milnor(M, n).anticommutation(); !c.ok) return Verdict{false, "random #" + std::to_string(s)};
      }
      return Verdict{};
    });
    run_check(r, "comod.milnor.derivation", "comod:milnor-derivation", [&] {
      auto H1 = composite_hopf(p, 1, Tp);
      const Comodule L = lens_lambda_comodule(H1);
      if (auto v = from_checks(milnor_derivation_check(L, L, 1)); !v.ok) return v;
      auto rng = check_rng(cfg.seed, "comod.milnor.derivation");
      auto Lam = exterior_hopf(p, n, Tower::finite(FiniteField::make(p, 2)));
      for (int s = 0; s < 8; ++s) {
        const auto a = random_lambda_comodule(Lam, 1 + s % 2, rng), b = random_lambda_comodule(Lam, 1, rng);
        if (auto v = from_checks(milnor_derivation_check(a, b, n)); !v.ok) return Verdict{false, "random #" + std::to_string(s) + ": " + v.witness};
      }
      return Verdict{};
    });
    run_check(r, "comod.milnor.twist", "comod:milnor-twist", [&] {
      auto rng = check_rng(cfg.seed, "comod.milnor.twist");
      auto Fpn = FiniteField::make(p, n);
      auto T = Tower::finite(Fpn);
      auto H = composite_hopf(p, n, T);
      const Comodule L = lens_comodule(H);
      const int N = static_cast<int>(ipow(p, n)) + 1;
      const FGL honda = honda_fgl(n, T, N);
      for (int s = 0; s < 4; ++s) {
        std::vector<TowerElem> a{T->from_fq(Fpn->pow(Fpn->primitive(), s + 1))};
        for (int j = 1; j < n; ++j) a.push_back(random_elem(*T, rng));
        if (!HondaEndo::make(honda, n, a, N).is_endomorphism()) return Verdict{false, "witness is not a Honda automorphism"};
        if (auto v = from_checks(milnor_twist_check(L, H, a)); !v.ok) return Verdict{false, "witness #" + std::to_string(s) + ": " + v.witness};
      }
      return Verdict{};
    });
    run_check(r, "comod.milnor.recognizer", "comod:milnor-recognize", [&] {
      auto rng = check_rng(cfg.seed, "comod.milnor.recognizer");
      auto H = composite_hopf(p, n, Tp);
      const Comodule L = lens_lambda_comodule(H);
      const auto Q = extract_milnor(L, n);
      for (int s = 0; s < 4; ++s) {
        std::vector<TowerElem> q;
        TMatrix D(L.rank(), std::vector<TowerElem>(L.rank(), Tp->zero()));
        for (int i = 0; i < n; ++i) {
          q.push_back(random_elem(*Tp, rng));
          for (std::size_t k = 0; k < L.rank(); ++k)
            for (std::size_t l = 0; l < L.rank(); ++l) D[k][l] += Q.Q[static_cast<std::size_t>(i)][k][l] * q.back();
        }
        const auto got = recognize_milnor(Q, D, lens_index(p, n, true, 0));
        if (!got.in_span || got.q != q) return Verdict{false, "planted #" + std::to_string(s) + " " + got.witness};
      }
      return Verdict{};
    });
  }

  if (all || cfg.selection == "assembly") {
    run_check(r, "comod.assembly.lens", "comod:assembly", [&] {
      for (int k = 1; k <= n; ++k) {
        auto H = composite_hopf(p, k, Tp);
        CLambdaComodule parts{&H, lens_c_comodule(H), lens_lambda_comodule(H)};
        if (!compatibility_check(parts).ok) return Verdict{false, "n=" + std::to_string(k) + " compatibility"};
        if (assemble(parts).rho != lens_comodule(H).rho) return Verdict{false, "n=" + std::to_string(k) + " assembled map"};
        if (auto v = round_trips(lens_comodule(H), H); !v.ok) return Verdict{false, "n=" + std::to_string(k) + " " + v.witness};
      }
      return Verdict{};
    });
    run_check(r, "comod.assembly.random", "comod:assembly", [&] {
      auto rng = check_rng(cfg.seed, "comod.assembly.random");
      auto H1 = composite_hopf(p, 1, Tp);
      std::optional<CompositeHopf> H2;
      if (p == 3 && n >= 2) H2 = composite_hopf(p, 2, Tp);
      for (int s = 0; s < cfg.samples; ++s) {
        const CompositeHopf& H = (H2 && s % 2) ? *H2 : H1;
        if (auto v = round_trips(random_composite_comodule(H, rng), H); !v.ok) return Verdict{false, "#" + std::to_string(s) + ": " + v.witness};
      }
      return Verdict{};
    });
    run_check(r, "comod.assembly.generator_identities", "comod:generator-identities", [&] {
      return from_checks(generator_identities(composite_hopf(p, n, Tp)));
    });
    run_check(r, "comod.assembly.rejects_non_colinear", "comod:assembly", [&] {
      auto H = composite_hopf(p, 2, Tp);
      const auto& Lam = H.lambda;
      auto ry = lens_basis_vector(Lam, p, 2, "y", Lam.one());
      auto v0 = lens_basis_vector(Lam, p, 2, "x", Lam.gen("b0"));
      auto v1 = lens_basis_vector(Lam, p, 2, "x^2", Lam.gen("b1"));
      for (std::size_t k = 0; k < ry.size(); ++k) ry[k] += v0[k] + v1[k];
      const Comodule bent = multiplicative_lens(Lam, p, 2, lens_basis_vector(Lam, p, 2, "x", Lam.one()), ry);
      CLambdaComodule pair{&H, lens_c_comodule(H), bent};
      if (compatibility_check(pair).ok) return Verdict{false, "non-colinear pair accepted"};
      try {
        assemble(pair);
      } catch (const Error& e) {
        return verdict(e.code() == ErrorCode::CompatibilityFailure, e.what());
      }
      return Verdict{false, "assemble did not throw"};
    });
  }
  return r;
}

}  // namespace chromalg
