#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "chromalg/error.hpp"
#include "chromalg/suites.hpp"
#include "json.hpp"

using namespace chromalg;

namespace {

struct Options {
  RunConfig cfg;
  std::string format = "text";
  std::string modulus;
  std::string out;
  std::string law = "e";
  std::string in;
  std::string witness = "central";
  std::string coeffs;
  int frob = 0;
  bool seed_given = false;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--p", o.cfg.p, "odd prime");
  app->add_option("--n", o.cfg.n, "height, 1..3");
  app->add_option("--xdeg", o.cfg.xdeg, "X-degree; 0 selects the default");
  app->add_option("--uprec", o.cfg.uprec, "u-precision; 0 selects the default");
  app->add_option("--modulus", o.modulus, "base field modulus, comma separated coefficients low to high");
  app->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--seed", o.cfg.seed, "seed for randomized checks")->each([&](const std::string&) { o.seed_given = true; });
  app->add_option("--samples", o.cfg.samples, "random instances per randomized check");
  app->add_option("--out", o.out, "write the report to a file instead of standard output");
}

void finish_config(Options& o) {
  o.cfg.format = o.format == "json" ? Format::Json : Format::Text;
  if (!o.seed_given)
    if (const char* env = std::getenv("CHROMALG_SEED")) {
      try {
        o.cfg.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ConfigError, std::string("CHROMALG_SEED is not an integer: ") + env);
      }
    }
  o.cfg.modulus.clear();
  std::stringstream ss(o.modulus);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) o.cfg.modulus.push_back(std::stoi(tok));
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::ConfigError, "cannot write " + o.out);
  f << text;
}

std::string series_out(const Options& o, const std::string& label, const TSeries& s) {
  if (o.cfg.format == Format::Json) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["object"] = label;
    j["tower"] = s.ctx()->descriptor();
    j["series"] = s.to_json();
    return j.dump(2) + "\n";
  }
  return label + " over " + s.ctx()->descriptor() + "\n" + s.to_string() + "\n";
}

int fgl_N(const RunConfig& c) {
  long long q = 1;
  for (int i = 0; i <= c.n; ++i) q *= c.p;
  return c.xdeg ? c.xdeg + 1 : static_cast<int>(q + c.p);
}

FGL named_law(const std::string& law, int n, const TowerPtr& T, int N) {
  if (law == "e") return e_law(n, T, N);
  if (law == "honda") return honda_fgl(n, T, N);
  throw Error(ErrorCode::ConfigError, "unknown law " + law + " (expected e or honda)");
}

// {base, tower, law, p, n, N, phi, inverse, report}
std::string iso_json(const RunConfig& c, const std::string& law, const TowerPtr& base, const FGLIso& iso) {
  IsoReport r = verify_iso(iso);
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["p"] = c.p;
  j["n"] = iso.n;
  j["N"] = iso.N;
  j["law"] = law;
  j["base"] = base->descriptor();
  j["tower"] = iso.tower->descriptor();
  j["phi"] = iso.phi.to_json();
  j["inverse"] = iso.inverse.to_json();
  j["steps"] = iso.steps;
  j["report"] = {{"ok", r.ok}, {"inverse_ok", r.inverse_ok}, {"degree", r.degree}, {"discrepancy", r.discrepancy}};
  return j.dump(2) + "\n";
}

FGLIso iso_from_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ConfigError, "cannot read " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  const TowerPtr base = Tower::parse_descriptor(j.at("base").get<std::string>());
  const TowerPtr L = Tower::replay_over(base, *Tower::parse_descriptor(j.at("tower").get<std::string>()));
  const int n = j.at("n").get<int>(), N = j.at("N").get<int>();
  TSeries phi = TSeries::from_json(j.at("phi"), L);
  return make_iso(named_law(j.at("law").get<std::string>(), n, base, N), honda_fgl(n, base, N), n, phi);
}

int report_exit(const Options& o, const Report& r) {
  emit(o, render(r, o.cfg.format));
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chromalg: formal group laws, Hopf algebroids, comodules and the Chern character"};
  app.require_subcommand(1);
  Options o;
  int code = 0;

  auto* fgl = app.add_subcommand("fgl", "formal group laws");
  fgl->require_subcommand(1);
  auto* fgl_check = fgl->add_subcommand("check", "axiom, p-series and linearization suite");
  auto* fgl_honda = fgl->add_subcommand("honda", "Honda law of height n over F_(p^n)");
  auto* fgl_spec = fgl->add_subcommand("specialize", "E-theory law read mod I_n over F_p((u))");
  auto* fgl_ps = fgl->add_subcommand("pseries", "[p](X) of the chosen law");
  auto* fgl_endo = fgl->add_subcommand("endo", "sum^H a_i X^(p^i) for coefficients in F_(p^n)");
  for (auto* s : {fgl_check, fgl_honda, fgl_spec, fgl_ps, fgl_endo}) add_common(s, o);
  fgl_ps->add_option("--law", o.law, "e or honda");
  fgl_endo->add_option("--coeffs", o.coeffs, "comma separated elements of F_(p^n), e.g. a,1")->required();

  auto* iso = app.add_subcommand("iso", "isomorphism between the E-law and the Honda law");
  iso->require_subcommand(1);
  auto* iso_check = iso->add_subcommand("check", "solver, verification and equivariance suite");
  auto* iso_solve = iso->add_subcommand("solve", "solve for Phi and emit {tower, phi, report}");
  auto* iso_verify = iso->add_subcommand("verify", "verify an isomorphism emitted by iso solve");
  auto* iso_eq = iso->add_subcommand("equivariance", "check a group witness against an emitted isomorphism");
  for (auto* s : {iso_check, iso_solve, iso_verify, iso_eq}) add_common(s, o);
  iso_solve->add_option("--law", o.law, "source law: e or honda");
  for (auto* s : {iso_verify, iso_eq}) s->add_option("--in", o.in, "JSON from iso solve")->required();
  iso_eq->add_option("--witness", o.witness, "central, honda or frobenius")
      ->check(CLI::IsMember({"central", "honda", "frobenius"}));
  iso_eq->add_option("--frob", o.frob, "power of Frobenius for the frobenius witness");

  auto* hopf = app.add_subcommand("hopf", "Hopf algebroid axioms");
  auto* hopf_check = hopf->add_subcommand("check", "axiom suite");
  hopf->require_subcommand(1);
  add_common(hopf_check, o);
  hopf_check->add_option("--instance", o.cfg.selection, "lambda, cgr, composite or all")
      ->check(CLI::IsMember({"lambda", "cgr", "composite", "all"}));

  auto* comod = app.add_subcommand("comod", "comodules and Milnor operations");
  auto* comod_check = comod->add_subcommand("check", "comodule suite");
  comod->require_subcommand(1);
  add_common(comod_check, o);
  comod_check->add_option("--suite", o.cfg.selection, "equivalence, milnor, assembly or all")
      ->check(CLI::IsMember({"equivalence", "milnor", "assembly", "all"}));

  auto* spaces = app.add_subcommand("spaces", "test-space models and the Chern character");
  spaces->require_subcommand(1);
  auto* sp_chern = spaces->add_subcommand("chern", "solve Phi and run the Chern character suite");
  auto* sp_coact = spaces->add_subcommand("coaction", "print coaction tables");
  for (auto* s : {sp_chern, sp_coact}) add_common(s, o);

  auto* all = app.add_subcommand("all", "every suite");
  add_common(all, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    finish_config(o);
    RunConfig& c = o.cfg;
    if (fgl_check->parsed()) {
      c.selection = "check";
      code = report_exit(o, run_fgl(c));
    } else if (fgl_honda->parsed() || fgl_spec->parsed() || fgl_ps->parsed() || fgl_endo->parsed()) {
      validate(c, {});
      const int N = fgl_N(c);
      const int uprec = c.uprec ? c.uprec : default_uprec(c.n);
      auto Fpn = Tower::finite(FiniteField::make(c.p, c.n, c.modulus));
      auto Tu = Tower::laurent(FiniteField::make(c.p, 1), uprec);
      if (fgl_honda->parsed()) emit(o, series_out(o, "honda", honda_fgl(c.n, Fpn, N).F));
      if (fgl_spec->parsed()) emit(o, series_out(o, "e_law", e_law(c.n, Tu, N).F));
      if (fgl_ps->parsed()) {
        const TowerPtr& T = o.law == "honda" ? Fpn : Tu;
        emit(o, series_out(o, "p_series(" + o.law + ")", p_series(named_law(o.law, c.n, T, N))));
      }
      if (fgl_endo->parsed()) {
        std::vector<TowerElem> a;
        std::stringstream ss(o.coeffs);
        for (std::string tok; std::getline(ss, tok, ',');) a.push_back(Fpn->from_fq(Fpn->field()->parse(tok)));
        emit(o, series_out(o, "honda_endo", HondaEndo::make(honda_fgl(c.n, Fpn, N), c.n, a, N).series));
      }
    } else if (iso_check->parsed()) {
      c.selection = "check";
      code = report_exit(o, run_iso(c));
    } else if (iso_solve->parsed()) {
      validate(c, {});
      const int N = (c.xdeg ? c.xdeg : default_xdeg(c.p, c.n)) + 1;
      const int uprec = c.uprec ? c.uprec : default_uprec(c.n);
      RunConfig tc = c;
      tc.uprec = uprec;
      auto T = base_tower(tc);
      FGLIso s = solve_phi(named_law(o.law, c.n, T, N), honda_fgl(c.n, T, N), c.n, {N, uprec});
      emit(o, iso_json(c, o.law, T, s));
    } else if (iso_verify->parsed()) {
      FGLIso s = iso_from_json(o.in);
      IsoReport r = verify_iso(s);
      nlohmann::ordered_json j{{"schema", kReportSchema}, {"ok", r.ok}, {"inverse_ok", r.inverse_ok},
                               {"degree", r.degree}, {"discrepancy", r.discrepancy}};
      emit(o, o.cfg.format == Format::Json ? j.dump(2) + "\n"
                                            : std::string(r.ok && r.inverse_ok ? "PASS" : "FAIL") + " verify\n");
      code = r.ok && r.inverse_ok ? 0 : 1;
    } else if (iso_eq->parsed()) {
      FGLIso s = iso_from_json(o.in);
      TSeries X = TSeries::var(x_table(s.N), s.tower, 0);
      ActionWitness w{WitnessKind::Gn, X, o.frob};
      if (o.witness == "central") w = {WitnessKind::GnPlus1, formal_sum(s.source, {X, X}), 0};
      if (o.witness == "honda") {
        const auto& F = *s.tower->field();
        long long q = 1;
        for (int i = 0; i < s.n; ++i) q *= F.p();
        auto g = F.pow(F.primitive(), static_cast<std::int64_t>((F.order() - 1) / (q - 1)));
        w = {WitnessKind::Gn, HondaEndo::make(s.target, s.n, {s.tower->from_fq(g)}, s.N).series, 0};
      }
      EquivarianceReport r = check_equivariance(s, w);
      nlohmann::ordered_json j{{"schema", kReportSchema}, {"witness", o.witness}, {"ok", r.ok},
                               {"compared_below", r.compared_below}, {"detail", r.detail}};
      emit(o, o.cfg.format == Format::Json ? j.dump(2) + "\n"
                                            : std::string(r.ok ? "PASS" : "FAIL") + " equivariance " + o.witness + "\n");
      code = r.ok ? 0 : 1;
    } else if (hopf_check->parsed()) {
      code = report_exit(o, run_hopf(c));
    } else if (comod_check->parsed()) {
      code = report_exit(o, run_comod(c));
    } else if (sp_chern->parsed()) {
      c.selection = "chern";
      code = report_exit(o, run_spaces(c));
    } else if (sp_coact->parsed()) {
      emit(o, coaction_tables(c));
    } else if (all->parsed()) {
      validate(c, {});
      auto rs = run_all(c);
      emit(o, render(rs, c.format));
      for (const auto& r : rs) code = r.ok() ? code : 1;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
