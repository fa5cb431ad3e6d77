// hecke-forge command-line front end.

#include "hecke_forge/charformula.hpp"
#include "hecke_forge/finglq.hpp"
#include "hecke_forge/hecke.hpp"
#include "hecke_forge/oracle/convolution.hpp"
#include "hecke_forge/pseudocoef.hpp"
#include "hecke_forge/report.hpp"
#include "hecke_forge/repth.hpp"
#include "hecke_forge/verify.hpp"
#include "hecke_forge/weyl.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace hf = hecke_forge;
using hf::report::VerificationReport;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

std::string type_str(const hf::weyl::ParahoricType& t) { return t.is_empty() ? "∅" : t.str(); }

int print_reports(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    std::cout << hf::report::status_name(r.status) << "  " << r.name << " [" << r.param_string() << "]  lhs=" << r.lhs
              << "  rhs=" << r.rhs;
    if (!r.note.empty()) std::cout << "  (" << r.note << ")";
    std::cout << "\n";
  }
  return hf::verify::all_passed(reports) ? 0 : kExitFail;
}

void check_field(int q) {
  if (!hf::finglq::FiniteField::is_supported(q)) throw std::invalid_argument("unsupported field size " + std::to_string(q));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hecke-forge: Hecke algebras, parahoric combinatorics and finite trace formulas"};
  app.require_subcommand(1);
  int rc = 0;

  // weyl -------------------------------------------------------------------
  auto* weyl_cmd = app.add_subcommand("weyl", "Affine Weyl group and parahoric types");
  weyl_cmd->require_subcommand(1);
  int w_e = 2;
  std::string w_t;
  auto* orbits = weyl_cmd->add_subcommand("orbits", "Rotation-orbit representatives of proper subsets of Z/e");
  orbits->add_option("--e", w_e, "rank")->required()->check(CLI::Range(1, 16));
  orbits->callback([&] {
    for (const auto& t : hf::weyl::orbit_reps(w_e)) {
      const auto [u, n] = hf::weyl::period_and_n(t);
      std::cout << type_str(t) << "  d_T=" << t.dim() << " u_T=" << u << " n_T=" << n << " eps_T=" << hf::weyl::epsilon(t) << "\n";
    }
  });
  auto* eps = weyl_cmd->add_subcommand("epsilon", "Sign eps_T of the rotation z_T on the complement of T");
  eps->add_option("--e", w_e, "rank")->required()->check(CLI::Range(1, 16));
  eps->add_option("--T", w_t, "comma-separated nodes of T (empty for the empty set)");
  eps->callback([&] { std::cout << hf::weyl::epsilon(hf::weyl::ParahoricType(w_e, parse_int_list(w_t))) << "\n"; });
  std::string w_x;
  auto* len = weyl_cmd->add_subcommand("length", "Length and reduced word of an element");
  len->add_option("--e", w_e, "rank")->required()->check(CLI::Range(1, 16));
  len->add_option("--x", w_x, "element, e.g. \"1,0;2 1\" or \"pi*s1\"")->required();
  len->callback([&] {
    const auto x = hf::weyl::parse_element(w_x, w_e);
    const auto rw = hf::weyl::reduced_word(x);
    std::cout << "element " << x.str() << "\nlength " << x.length() << "\nword pi^" << rw.pi_power;
    for (int s : rw.word) std::cout << " s" << s;
    std::cout << "\n";
  });

  // hecke ------------------------------------------------------------------
  auto* hecke_cmd = app.add_subcommand("hecke", "Iwahori-Hecke algebra");
  hecke_cmd->require_subcommand(1);
  int h_e = 2, h_q = 0;
  std::string h_lhs, h_rhs;
  auto* mul = hecke_cmd->add_subcommand("mul", "Product T_x T_y");
  mul->add_option("--e", h_e, "rank")->required()->check(CLI::Range(1, 16));
  mul->add_option("--q", h_q, "evaluate the parameter at q (symbolic if omitted)");
  mul->add_option("--lhs", h_lhs, "left element")->required();
  mul->add_option("--rhs", h_rhs, "right element")->required();
  mul->callback([&] {
    const auto a = hf::hecke::HeckeElt::basis(hf::weyl::parse_element(h_lhs, h_e));
    const auto b = hf::hecke::HeckeElt::basis(hf::weyl::parse_element(h_rhs, h_e));
    auto prod = a * b;
    if (h_q != 0) prod = prod.evaluate_at(h_q);
    std::cout << prod.str() << "\n";
  });
  auto* oracle = hecke_cmd->add_subcommand("oracle", "Brute-force structure constants on GL(e, q), compared with the Hecke rules");
  oracle->add_option("--e", h_e, "rank")->required()->check(CLI::Range(1, 4));
  oracle->add_option("--q", h_q, "field size")->required();
  oracle->callback([&] {
    check_field(h_q);
    const auto brute = hf::oracle::convolution_oracle(h_e, h_q);
    std::cout << hf::hecke::structure_table_csv(brute);
    const bool same = brute == hf::hecke::finite_structure_constants(h_e, h_q);
    std::cerr << (same ? "matches" : "DIFFERS FROM") << " the Iwahori-Matsumoto constants\n";
    if (!same) rc = kExitFail;
  });

  // rep --------------------------------------------------------------------
  auto* rep_cmd = app.add_subcommand("rep", "Finite GL(e, q) representations");
  rep_cmd->require_subcommand(1);
  int r_e = 2, r_q = 2, r_chi = 0;
  bool r_csv = false;
  auto* etau = rep_cmd->add_subcommand("etau", "Idempotent e_tau: idempotency, dimension, character");
  etau->add_option("--e", r_e, "rank")->required()->check(CLI::Range(1, 4));
  etau->add_option("--q", r_q, "field size")->required();
  etau->add_option("--chi", r_chi, "character index k of F_q^x")->check(CLI::NonNegativeNumber);
  etau->add_flag("--csv", r_csv, "print the character of tau as CSV");
  etau->callback([&] {
    check_field(r_q);
    const auto et = hf::repth::e_tau<hf::repth::Complex>(r_e, r_q, r_chi);
    const auto g = et.context().group;
    const auto sq = g->order() <= 2000 ? hf::repth::convolve(et, et) : hf::repth::convolve_equivariant(et, et);
    const double err = sq.max_abs_diff(et);
    std::cout << "group " << g->name() << " order " << g->order() << "\n";
    std::cout << "idempotency defect " << hf::report::format_double(err) << "\n";
    std::cout << "dim tau = e_tau(1)|G| = "
              << hf::report::format_complex(et.complex_at(g->identity()) * static_cast<double>(g->order())) << "\n";
    const auto chi = hf::repth::char_generalized_trivial(r_e, r_q, r_chi);
    if (r_csv) std::cout << hf::repth::character_table_csv(chi);
    if (err > 1e-10) rc = kExitFail;
  });
  auto* ac = rep_cmd->add_subcommand("alvis-curtis", "Sign identity tau = (-1)^{e-1} St on elliptic regular classes");
  ac->add_option("--e", r_e, "rank")->required()->check(CLI::Range(1, 4));
  ac->add_option("--q", r_q, "field size")->required();
  ac->add_option("--chi", r_chi, "character index k of F_q^x")->check(CLI::NonNegativeNumber);
  ac->callback([&] {
    check_field(r_q);
    const auto g = hf::finglq::general_linear(r_e, r_q);
    for (auto c : g->classes().reps) {
      if (!hf::finglq::elliptic_regular(g->element(c))) continue;
      const auto s = hf::repth::alvis_curtis_sign_check(c, r_e, r_q, r_chi);
      std::cout << g->element(c).str() << "  tau=" << hf::report::format_complex(s.tau)
                << "  St=" << hf::report::format_complex(s.steinberg) << "  " << (s.holds ? "holds" : "FAILS") << "\n";
      if (!s.holds) rc = kExitFail;
    }
  });

  // pseudocoef -------------------------------------------------------------
  auto* pc_cmd = app.add_subcommand("pseudocoef", "Euler-Poincare functions and the lift F_0");
  pc_cmd->require_subcommand(1);
  int p_e = 2, p_ep = 1, p_q = 2, p_n = 4, p_nu = 1;
  std::string p_omega = "1";
  auto* assemble = pc_cmd->add_subcommand("assemble", "F_0 as JSON, with its central reduction");
  assemble->add_option("--e", p_e, "rank")->required()->check(CLI::Range(1, 8));
  assemble->add_option("--eprime", p_ep, "ramification index e'")->check(CLI::PositiveNumber);
  assemble->add_option("--q", p_q, "parameter q")->required()->check(CLI::PositiveNumber);
  assemble->add_option("--omega", p_omega, "central character value at the uniformizer (rational)");
  assemble->callback([&] {
    const hf::pseudocoef::PseudoCoefParams p{p_e, p_ep, p_q, hf::Rational(p_omega)};
    const auto f0 = hf::pseudocoef::assemble_F0(p);
    const auto red = hf::hecke::central_reduction(f0, p.omega_at_pi);
    const bool matches = red == hf::pseudocoef::laumon_f0(p);
    nlohmann::ordered_json doc;
    doc["schema"] = hf::report::kSchema;
    doc["params"] = {{"e", p_e}, {"eprime", p_ep}, {"q", p_q}, {"omega", p_omega}};
    doc["F0"] = hf::pseudocoef::to_json(f0);
    doc["reduction_equals_f0"] = matches;
    std::cout << doc.dump(2) << "\n";
  });
  auto* filter = pc_cmd->add_subcommand("filter", "Solutions (T, l, k) of the valuation equation");
  filter->add_option("--N", p_n, "N = e e'")->required()->check(CLI::PositiveNumber);
  filter->add_option("--nu", p_nu, "valuation nu, 0 <= nu < N")->required();
  filter->add_option("--eprime", p_ep, "ramification index e'")->check(CLI::PositiveNumber);
  filter->callback([&] {
    const auto res = hf::pseudocoef::support_filter(p_n, p_ep, p_nu);
    for (const auto& t : res.triples) std::cout << "(" << type_str(t.type) << "," << t.l << "," << t.k << ")\n";
    if (!res.coprime) std::cerr << "note: nu is not coprime to N; uniqueness is not expected\n";
    if (res.coprime && !res.unique_empty()) rc = kExitFail;
  });

  // char -------------------------------------------------------------------
  auto* char_cmd = app.add_subcommand("char", "Character-formula skeletons");
  char_cmd->require_subcommand(1);
  int c_e = 2, c_q = 2;
  auto* cverify = char_cmd->add_subcommand("verify", "Constant collapse, the finite first formula and the power identity");
  cverify->add_option("--e", c_e, "rank")->required()->check(CLI::Range(1, 4));
  cverify->add_option("--q", c_q, "field size")->required();
  cverify->callback([&] {
    check_field(c_q);
    std::vector<hf::verify::PlannedCheck> plan;
    hf::verify::VerifyOptions o;
    o.max_e = c_e;
    o.max_q = c_q;
    std::vector<hf::verify::PlannedCheck> all;
    hf::verify::add_pseudocoef_checks(all, o);
    for (auto& c : all) {
      if (c.name.rfind("char.", 0) != 0) continue;
      const auto e_it = std::find_if(c.params.begin(), c.params.end(), [](const auto& kv) { return kv.first == "e"; });
      const auto q_it = std::find_if(c.params.begin(), c.params.end(), [](const auto& kv) { return kv.first == "q"; });
      if (e_it != c.params.end() && e_it->second != std::to_string(c_e)) continue;
      if (q_it != c.params.end() && q_it->second != std::to_string(c_q)) continue;
      plan.push_back(c);
    }
    rc = print_reports(hf::verify::run_all(plan));
  });

  // verify -----------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "Verification suite");
  verify_cmd->require_subcommand(1);
  hf::verify::VerifyOptions vo;
  std::string v_format = "json", v_out;
  bool v_no_ts = false;
  unsigned v_jobs = 0;
  auto* vall = verify_cmd->add_subcommand("all", "Run every identity check");
  vall->add_option("--max-e", vo.max_e, "largest rank")->check(CLI::Range(1, 4));
  vall->add_option("--max-q", vo.max_q, "largest field size")->check(CLI::Range(2, 9));
  vall->add_option("--format", v_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  vall->add_option("--out", v_out, "write the report here instead of stdout");
  vall->add_flag("--no-timestamps", v_no_ts, "omit timing fields for byte-identical output");
  vall->add_option("--jobs", v_jobs, "worker threads (default: hardware concurrency, at least 2)");
  vall->add_option("--seed", vo.seed, "seed for the randomized checks");
  vall->callback([&] {
    const auto reports = hf::verify::run_all(hf::verify::plan_all(vo), v_jobs);
    const std::string text = v_format == "csv" ? hf::report::reports_csv(reports, !v_no_ts) : hf::report::reports_json(reports, !v_no_ts);
    if (v_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(v_out, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + v_out);
      f << text;
    }
    std::size_t pass = 0, fail = 0, skipped = 0;
    for (const auto& r : reports) {
      pass += r.status == hf::report::Status::pass;
      fail += r.status == hf::report::Status::fail;
      skipped += r.status == hf::report::Status::skipped;
      if (r.status == hf::report::Status::fail) std::cerr << "FAIL " << r.name << " [" << r.param_string() << "] " << r.note << "\n";
    }
    std::cerr << pass << " pass, " << fail << " fail, " << skipped << " skipped\n";
    rc = fail == 0 ? 0 : kExitFail;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return rc;
}
