// Command-line front end: parses sphere-function expressions, runs the
// product/report machinery, and prints deterministic text or JSON.
//
// Exit codes: 0 success, 1 mathematical error (pole, no preimage, failed
// check), 2 usage or parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>

#include "s2star/checks.hpp"
#include "s2star/expr.hpp"
#include "s2star/karabegov.hpp"
#include "s2star/topology.hpp"

using json = nlohmann::ordered_json;
using namespace s2star;

namespace {

struct CliConfig {
  std::string lambda = "8";
  std::string hbar = "symbolic";
  std::string R = "0";
  std::string C = "1";
  std::string disc_center = "1/2";
  std::string disc_radius = "1/4";
  unsigned order = 2;
  unsigned degree = 3;
  std::uint64_t seed = 20240817;
  bool json_out = false;
};

Rat parse_positive_rat(const std::string &s, const char *what) {
  GaussRat g = parse_gauss(s);
  if (!g.is_real() || g.re <= 0)
    throw ParseError(0, "positive rational", std::string(what) + " must be a positive rational");
  return g.re;
}

Rat parse_nonneg_rat(const std::string &s, const char *what) {
  GaussRat g = parse_gauss(s);
  if (!g.is_real() || g.re < 0)
    throw ParseError(0, "nonnegative rational",
                     std::string(what) + " must be a nonnegative rational");
  return g.re;
}

std::optional<GaussRat> parse_hbar(const std::string &s) {
  if (s == "symbolic")
    return std::nullopt;
  return parse_gauss(s);
}

json config_json(const CliConfig &cfg) {
  json j;
  j["lambda"] = cfg.lambda;
  j["hbar"] = cfg.hbar;
  j["R"] = cfg.R;
  j["C"] = cfg.C;
  j["order"] = cfg.order;
  j["degree"] = cfg.degree;
  j["seed"] = cfg.seed;
  j["output"] = cfg.json_out ? "json" : "text";
  return j;
}

json poly_json(const InvariantPoly &p) {
  json arr = json::array();
  for (auto &[m, c] : p.poly.terms())
    arr.push_back(json::array({m.ea, m.eb, m.ec, to_string(c)}));
  return arr;
}

InvariantPoly require_invariant(const ParsedPoly &p, const char *which) {
  if (std::holds_alternative<InvariantPoly>(p))
    return std::get<InvariantPoly>(p);
  const FreePoly &f = std::get<FreePoly>(p);
  if (!is_right_invariant(f))
    throw MathError(MathError::Code::NotInvariant,
                    std::string(which) + " is not right invariant; it does not descend to the sphere");
  SpherePoly s = reduce_sphere(f);
  return to_ABC(s, s.degree() + 2);
}

struct Output {
  json j;
  bool json_mode;
  std::string text;

  void emit(const std::string &command, const CliConfig &cfg, int exit_code = 0) const {
    if (json_mode) {
      json full;
      full["command"] = command;
      full["config"] = config_json(cfg);
      full["result"] = j;
      full["errors"] = json::array();
      std::cout << full.dump(2) << "\n";
    } else {
      std::cout << text;
    }
    (void)exit_code;
  }
};

int run_star(const CliConfig &cli, const std::string &lhs, const std::string &rhs) {
  OrbitParams params(parse_positive_rat(cli.lambda, "--lambda"));
  StarConfig cfg(params, parse_hbar(cli.hbar));
  InvariantPoly p = require_invariant(parse_poly_expr(lhs), "left factor");
  InvariantPoly q = require_invariant(parse_poly_expr(rhs), "right factor");
  InvariantPoly prod = star(p, q, cfg);
  Output out{json{{"poly", poly_json(prod)}}, cli.json_out, to_string(prod) + "\n"};
  out.emit("star", cli);
  return 0;
}

int run_agree(const CliConfig &cli, const std::vector<std::string> &exprs) {
  OrbitParams params(parse_positive_rat(cli.lambda, "--lambda"));
  StarConfig scfg(params);
  KarabegovConfig kcfg = make_karabegov_config(params);
  json report = json::array();
  std::string text;
  bool all_equal = true;
  if (exprs.size() == 2) {
    InvariantPoly p = require_invariant(parse_poly_expr(exprs[0]), "left factor");
    InvariantPoly q = require_invariant(parse_poly_expr(exprs[1]), "right factor");
    InvariantPoly a = star(p, q, scfg), b = karabegov_star(p, q, kcfg);
    bool eq = (a == b);
    all_equal = eq;
    report.push_back({{"pair", json::array({exprs[0], exprs[1]})},
                      {"equal", eq},
                      {"twist_product", to_string(a)},
                      {"karabegov_product", to_string(b)}});
    text += std::string(eq ? "AGREE" : "DISAGREE") + "  twist = " + to_string(a) +
            "  karabegov = " + to_string(b) + "\n";
  } else {
    auto monos = checks::abc_monomials(cli.degree);
    for (auto &m1 : monos)
      for (auto &m2 : monos) {
        if (m1.degree() + m2.degree() > cli.degree)
          continue;
        InvariantPoly p{AbcPoly::monomial(m1)}, q{AbcPoly::monomial(m2)};
        bool eq = (star(p, q, scfg) == karabegov_star(p, q, kcfg));
        all_equal = all_equal && eq;
        report.push_back({{"pair", json::array({mono_to_string(m1), mono_to_string(m2)})},
                          {"equal", eq}});
        if (!eq)
          text += "DISAGREE at (" + mono_to_string(m1) + ", " + mono_to_string(m2) + ")\n";
      }
    text += std::string(all_equal ? "AGREE" : "DISAGREE") +
            "  all monomial pairs of total degree <= " + std::to_string(cli.degree) + "\n";
  }
  Output out{json{{"report", report}}, cli.json_out, text};
  out.emit("agree", cli);
  return all_equal ? 0 : 1;
}

int run_expand(const CliConfig &cli, const std::string &lhs, const std::string &rhs) {
  OrbitParams params(parse_positive_rat(cli.lambda, "--lambda"));
  InvariantPoly p = require_invariant(parse_poly_expr(lhs), "left factor");
  InvariantPoly q = require_invariant(parse_poly_expr(rhs), "right factor");
  FormalProduct f = formal_expand(p, q, cli.order, params);
  json report = json::array();
  std::string text;
  for (unsigned r = 0; r < f.orders.size(); ++r) {
    report.push_back({{"r", r}, {"poly", poly_json(f.orders[r])}});
    text += "C_" + std::to_string(r) + "(p, q) = " + to_string(f.orders[r]) + "\n";
  }
  Output out{json{{"report", report}}, cli.json_out, text};
  out.emit("expand", cli);
  return 0;
}

int run_poles(const CliConfig &cli, const std::string &lhs, const std::string &rhs) {
  OrbitParams params(parse_positive_rat(cli.lambda, "--lambda"));
  InvariantPoly p = require_invariant(parse_poly_expr(lhs), "left factor");
  InvariantPoly q = require_invariant(parse_poly_expr(rhs), "right factor");
  PoleSet poles = product_poles(p, q, params);
  json report = json::array();
  std::string text = "{";
  bool first = true;
  for (auto &[re, im] : poles.roots) {
    GaussRat g(re, im);
    report.push_back({{"root", to_string(g)}});
    text += std::string(first ? "" : ", ") + to_string(g);
    first = false;
  }
  text += "}\n";
  for (auto &f : poles.factors) {
    report.push_back({{"factor", to_string(f)}});
    text += "unresolved factor: " + to_string(f) + "\n";
  }
  Output out{json{{"report", report}}, cli.json_out, text};
  out.emit("poles", cli);
  return 0;
}

int run_pair(const CliConfig &cli, const std::string &lhs, const std::string &rhs) {
  OrbitParams params(parse_positive_rat(cli.lambda, "--lambda"));
  EnvElement y = parse_env(lhs), x = parse_env(rhs);
  Scalar value = pairing(y, x, params);
  Output out{json{{"poly", json::array({json::array({0, 0, 0, to_string(value)})})}},
             cli.json_out, to_string(value) + "\n"};
  out.emit("pair", cli);
  return 0;
}

int run_twist(const CliConfig &cli) {
  OrbitParams params(parse_positive_rat(cli.lambda, "--lambda"));
  TwistElement t = twist(cli.order, params);
  json report = json::array();
  std::string text;
  for (auto &[n, c] : t.coeffs) {
    report.push_back({{"n", n}, {"c", to_string(c)}});
    text += "c_" + std::to_string(n) + " = " + to_string(c) + "\n";
  }
  Output out{json{{"report", report}}, cli.json_out, text};
  out.emit("twist", cli);
  return 0;
}

int run_check(const CliConfig &cli) {
  OrbitParams params(parse_positive_rat(cli.lambda, "--lambda"));
  auto results = run_all_checks(cli.seed, params);
  json report = json::array();
  std::string text = "seed " + std::to_string(cli.seed) + "\n";
  int failures = 0;
  for (auto &r : results) {
    report.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    text += std::string(r.pass ? "PASS " : "FAIL ") + r.name +
            (r.pass || r.detail.empty() ? "" : "  -- " + r.detail) + "\n";
    failures += r.pass ? 0 : 1;
  }
  text += failures == 0 ? "all checks passed (" + std::to_string(results.size()) + ")\n"
                        : std::to_string(failures) + " check(s) failed\n";
  Output out{json{{"report", report}}, cli.json_out, text};
  out.emit("check", cli);
  return failures == 0 ? 0 : 1;
}

int run_seminorm(const CliConfig &cli, const std::string &expr_src) {
  SeminormParams sp(parse_nonneg_rat(cli.R, "--R"), parse_positive_rat(cli.C, "--C"));
  ParsedPoly p = parse_poly_expr(expr_src);
  std::optional<GaussRat> h = parse_hbar(cli.hbar);
  QInterval iv;
  const char *basis;
  auto fix_coeffs_abc = [&](const AbcPoly &poly) {
    AbcPoly out;
    for (auto &[m, c] : poly.terms())
      out.add_term(m, c.is_constant() || !h ? c : Scalar(c.eval(*h)));
    return out;
  };
  auto fix_coeffs_free = [&](const FreePoly &poly) {
    FreePoly out;
    for (auto &[m, c] : poly.terms())
      out.add_term(m, c.is_constant() || !h ? c : Scalar(c.eval(*h)));
    return out;
  };
  if (std::holds_alternative<InvariantPoly>(p)) {
    sp.basis = SeminormBasis::ThreeGenABC;
    basis = "A,B,C";
    iv = seminorm(fix_coeffs_abc(std::get<InvariantPoly>(p).poly), sp);
  } else {
    sp.basis = SeminormBasis::FourGen;
    basis = "U,Ubar,V,Vbar";
    iv = seminorm(fix_coeffs_free(std::get<FreePoly>(p)), sp);
  }
  json report = json::array();
  report.push_back({{"basis", basis},
                    {"lo", rat_to_string(iv.lo)},
                    {"hi", rat_to_string(iv.hi)}});
  Output out{json{{"report", report}}, cli.json_out,
             "[" + rat_to_string(iv.lo) + ", " + rat_to_string(iv.hi) + "]\n"};
  out.emit("seminorm", cli);
  return 0;
}

int run_continuity(const CliConfig &cli) {
  SeminormParams sp(parse_nonneg_rat(cli.R, "--R"), parse_positive_rat(cli.C, "--C"));
  GaussRat center = parse_gauss(cli.disc_center);
  Rat radius = parse_positive_rat(cli.disc_radius, "--disc-radius");
  auto disc = disc_constants(center, radius, std::max(cli.degree, 1u));
  auto rep = continuity_report(cli.degree, sp, disc);
  json report = json::array();
  report.push_back({{"summary",
                     {{"degree", rep.degree},
                      {"pairs_covered", rep.pairs_covered},
                      {"classes_checked", rep.classes_checked},
                      {"c_minus", rat_to_string(rep.c_minus_used)},
                      {"c_prime", rat_to_string(rep.c_prime_lb)},
                      {"all_pass", rep.all_pass}}}});
  for (auto &e : rep.failures)
    report.push_back({{"fail",
                       {{"d1", e.d1},
                        {"unbarred1", e.unbarred1},
                        {"d2", e.d2},
                        {"barred2", e.barred2},
                        {"lhs_ub", rat_to_string(e.lhs_ub)},
                        {"rhs_lb", rat_to_string(e.rhs_lb)}}}});
  std::string text = "degree <= " + std::to_string(rep.degree) + ": " +
                     std::to_string(rep.pairs_covered) + " monomial pairs in " +
                     std::to_string(rep.classes_checked) + " classes, C_- >= " +
                     rat_to_string(rep.c_minus_used) + ", C' >= " +
                     rat_to_string(rep.c_prime_lb) + "\n";
  for (auto &e : rep.failures)
    text += "FAIL class (d=" + std::to_string(e.d1) + ",u=" + std::to_string(e.unbarred1) +
            ") x (d=" + std::to_string(e.d2) + ",w=" + std::to_string(e.barred2) + ")\n";
  text += rep.all_pass ? "continuity estimate holds on every pair\n"
                       : "continuity estimate FAILED\n";
  Output out{json{{"report", report}}, cli.json_out, text};
  out.emit("continuity", cli);
  return rep.all_pass ? 0 : 1;
}

json error_json(const std::string &command, const CliConfig &cfg, const std::string &code,
                const std::string &message) {
  json full;
  full["command"] = command;
  full["config"] = config_json(cfg);
  full["result"] = nullptr;
  full["errors"] = json::array({{{"code", code}, {"message", message}}});
  return full;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact Wick-type star products on the 2-sphere"};
  app.require_subcommand(1);

  CliConfig cfg;
  app.add_option("--lambda", cfg.lambda, "orbit radius parameter (positive rational)");
  app.add_option("--hbar", cfg.hbar, "'symbolic' or a Gaussian rational like 1/3 or 1/2+1/5*i");
  app.add_option("--order", cfg.order, "expansion/twist order");
  app.add_option("--degree", cfg.degree, "degree bound for sweeps");
  app.add_option("--R", cfg.R, "seminorm exponent R >= 0");
  app.add_option("--C", cfg.C, "seminorm constant C >= 1");
  app.add_option("--disc-center", cfg.disc_center, "lambda/h disc center (Gaussian rational)");
  app.add_option("--disc-radius", cfg.disc_radius, "lambda/h disc radius");
  app.add_option("--seed", cfg.seed, "PRNG seed for randomized suites");
  app.add_flag("--json", cfg.json_out, "machine-readable output");

  std::vector<std::string> exprs;
  app.fallthrough(); // global flags may follow the subcommand
  auto *c_star = app.add_subcommand("star", "product of two sphere functions");
  c_star->add_option("exprs", exprs, "two expressions")->expected(2);
  auto *c_expand = app.add_subcommand("expand", "asymptotic expansion orders C_r(p, q)");
  c_expand->add_option("exprs", exprs, "two expressions")->expected(2);
  auto *c_poles = app.add_subcommand("poles", "pole set of the symbolic product");
  c_poles->add_option("exprs", exprs, "two expressions")->expected(2);
  auto *c_pair = app.add_subcommand("pair", "Shapovalov-type pairing of U(N-) x U(N+)");
  c_pair->add_option("exprs", exprs, "two enveloping-algebra expressions")->expected(2);
  auto *c_twist = app.add_subcommand("twist", "twist coefficients c_0..c_order");
  auto *c_check = app.add_subcommand("check", "run the full invariant suites");
  auto *c_semi = app.add_subcommand("seminorm", "certified (C||.||_1)_R enclosure");
  c_semi->add_option("exprs", exprs, "one expression")->expected(1);
  auto *c_cont = app.add_subcommand("continuity", "certified continuity estimate sweep");
  auto *c_agree = app.add_subcommand("agree", "compare the two product constructions");
  c_agree->add_option("exprs", exprs, "two expressions (omit to sweep --degree)")
      ->expected(0, 2);
  for (auto *sub : app.get_subcommands({}))
    sub->fallthrough();

  std::string active;
  try {
    app.parse(argc, argv);
    if (c_star->parsed())
      return (active = "star", run_star(cfg, exprs[0], exprs[1]));
    if (c_expand->parsed())
      return (active = "expand", run_expand(cfg, exprs[0], exprs[1]));
    if (c_poles->parsed())
      return (active = "poles", run_poles(cfg, exprs[0], exprs[1]));
    if (c_pair->parsed())
      return (active = "pair", run_pair(cfg, exprs[0], exprs[1]));
    if (c_twist->parsed())
      return (active = "twist", run_twist(cfg));
    if (c_check->parsed())
      return (active = "check", run_check(cfg));
    if (c_semi->parsed())
      return (active = "seminorm", run_seminorm(cfg, exprs[0]));
    if (c_cont->parsed())
      return (active = "continuity", run_continuity(cfg));
    if (c_agree->parsed())
      return (active = "agree", run_agree(cfg, exprs));
    return 2;
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  } catch (const ParseError &e) {
    if (cfg.json_out)
      std::cout << error_json(active, cfg, "ParseError",
                              std::string(e.what()) + " (expected " + e.expected() + ")")
                       .dump(2)
                << "\n";
    else
      std::cerr << "parse error: " << e.what() << " (expected " << e.expected() << ")\n";
    return 2;
  } catch (const MathError &e) {
    if (cfg.json_out)
      std::cout << error_json(active, cfg, e.code_name(), e.what()).dump(2) << "\n";
    else
      std::cerr << e.code_name() << ": " << e.what() << "\n";
    return 1;
  }
}
