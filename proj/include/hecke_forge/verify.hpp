#pragma once

// The full verification suite behind `verify all`.

#include "hecke_forge/charformula.hpp"
#include "hecke_forge/finglq.hpp"
#include "hecke_forge/hecke.hpp"
#include "hecke_forge/oracle/convolution.hpp"
#include "hecke_forge/oracle/word_length.hpp"
#include "hecke_forge/pseudocoef.hpp"
#include "hecke_forge/report.hpp"
#include "hecke_forge/repth.hpp"
#include "hecke_forge/weyl.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <future>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace hecke_forge::verify {

using report::Status;
using report::VerificationReport;
using Complex = std::complex<double>;

struct VerifyOptions {
  int max_e = 3;
  int max_q = 5;
  unsigned seed = 20240229;
};

struct PlannedCheck {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::function<void(VerificationReport&)> body;
};

/// Field sizes supported by finglq up to max_q.
inline std::vector<int> field_sizes(int max_q) {
  std::vector<int> out;
  for (int q : {2, 3, 4, 5, 7, 8, 9})
    if (q <= max_q) out.push_back(q);
  return out;
}

inline void exact(VerificationReport& r, const std::string& lhs, const std::string& rhs) {
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = 0;
  r.abs_error = lhs == rhs ? 0.0 : 1.0;
  r.settle();
}

inline void exact(VerificationReport& r, const Rational& lhs, const Rational& rhs) {
  r.lhs = lhs.str();
  r.rhs = rhs.str();
  r.tolerance = 0;
  r.abs_error = to_double(abs(lhs - rhs));
  if (lhs != rhs && r.abs_error == 0) r.abs_error = 1e-300;
  r.settle();
}

inline void approx(VerificationReport& r, Complex lhs, Complex rhs, double tol) {
  r.lhs = report::format_complex(lhs);
  r.rhs = report::format_complex(rhs);
  r.tolerance = tol;
  r.abs_error = std::abs(lhs - rhs);
  r.settle();
}

/// Worst case over many comparisons.
struct Worst {
  double err = -1;
  Complex lhs, rhs;
  void see(Complex a, Complex b) {
    const double d = std::abs(a - b);
    if (d > err) {
      err = d;
      lhs = a;
      rhs = b;
    }
  }
  void put(VerificationReport& r, double tol) const { approx(r, lhs, rhs, tol); }
};

inline VerificationReport run_check(const PlannedCheck& c) {
  VerificationReport r;
  r.name = c.name;
  r.params = c.params;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.body(r);
  } catch (const finglq::SizeLimitExceeded& ex) {
    r.status = Status::skipped;
    r.note = ex.what();
  } catch (const std::exception& ex) {
    r.status = Status::fail;
    r.note = ex.what();
  }
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::string str(int v) { return std::to_string(v); }

// ---------------------------------------------------------------------------
// weyl
// ---------------------------------------------------------------------------

inline void add_weyl_checks(std::vector<PlannedCheck>& plan, const VerifyOptions& o) {
  for (int e = 1; e <= o.max_e; ++e) {
    plan.push_back({"weyl.epsilon_empty", {{"e", str(e)}}, [e](VerificationReport& r) {
                      exact(r, str(weyl::epsilon(weyl::ParahoricType::empty(e))), str(neg_one_pow(e - 1)));
                    }});
    plan.push_back({"weyl.orbit_partition", {{"e", str(e)}}, [e](VerificationReport& r) {
                      const auto reps = weyl::orbit_reps(e);
                      int exactly_once = 0;
                      const auto all = weyl::proper_subsets(e);
                      for (const auto& t : all) {
                        int hits = 0;
                        for (const auto& rep : reps)
                          for (int j = 0; j < e; ++j) {
                            if (weyl::rotate(rep, j) == t) {
                              ++hits;
                              break;
                            }
                          }
                        exactly_once += hits == 1;
                      }
                      exact(r, str(exactly_once), str(static_cast<int>(all.size())));
                    }});
    plan.push_back({"weyl.period", {{"e", str(e)}}, [e](VerificationReport& r) {
                      int good = 0;
                      const auto all = weyl::proper_subsets(e);
                      for (const auto& t : all) {
                        const auto [u, n] = weyl::period_and_n(t);
                        bool ok = u * n == e && weyl::rotate(t, u) == t;
                        for (int j = 1; j < u; ++j) ok = ok && !(weyl::rotate(t, j) == t);
                        good += ok;
                      }
                      exact(r, str(good), str(static_cast<int>(all.size())));
                    }});
    if (e >= 2)
      plan.push_back({"weyl.length_bfs", {{"e", str(e)}, {"max_length", "6"}}, [e](VerificationReport& r) {
                        const oracle::WordLengthOracle bfs(e, 6);
                        int mismatches = 0, checked = 0;
                        for (const auto& [x, d] : bfs.ball())
                          for (int k : {-1, 0, 1, e + 1}) {
                            const auto y = weyl::ExtAffineElt::pi_power(k, e) * x;
                            mismatches += y.length() != *bfs.length(y);
                            ++checked;
                          }
                        exact(r, str(mismatches), "0");
                        r.note = std::to_string(checked) + " elements";
                      }});
    for (int q : field_sizes(o.max_q))
      plan.push_back({"weyl.parahoric_volume", {{"e", str(e)}, {"q", str(q)}}, [e, q](VerificationReport& r) {
                        exact(r, weyl::parahoric_volume(weyl::ParahoricType::all_finite(e), q), weyl::poincare_poly(e).evaluate(q));
                      }});
  }
}

// ---------------------------------------------------------------------------
// hecke
// ---------------------------------------------------------------------------

inline void add_hecke_checks(std::vector<PlannedCheck>& plan, const VerifyOptions& o) {
  using hecke::HeckeElt;
  using weyl::ExtAffineElt;
  for (int e = 2; e <= o.max_e; ++e)
    for (int q : field_sizes(o.max_q))
      plan.push_back({"hecke.oracle_equivalence", {{"e", str(e)}, {"q", str(q)}}, [e, q](VerificationReport& r) {
                        const auto brute = oracle::convolution_oracle(e, q);
                        const auto rules = hecke::finite_structure_constants(e, q);
                        exact(r, str(static_cast<int>(rules.size())) + " constants", str(static_cast<int>(brute.size())) + " constants");
                        if (!(brute == rules)) {
                          r.abs_error = 1;
                          r.settle();
                        }
                      }});
  for (int e = 1; e <= o.max_e; ++e) {
    const unsigned seed = o.seed + static_cast<unsigned>(e);
    plan.push_back({"hecke.associativity", {{"e", str(e)}, {"triples", "50"}}, [e, seed](VerificationReport& r) {
                      std::mt19937 rng(seed);
                      int bad = 0;
                      for (int i = 0; i < 50; ++i) {
                        const auto a = HeckeElt::basis(hecke::random_element(e, 1, rng));
                        const auto b = HeckeElt::basis(hecke::random_element(e, 1, rng));
                        const auto c = HeckeElt::basis(hecke::random_element(e, 1, rng));
                        bad += !((a * b) * c == a * (b * c));
                      }
                      exact(r, str(bad), "0");
                    }});
    plan.push_back({"hecke.central_morphism", {{"e", str(e)}, {"pairs", "30"}}, [e, seed](VerificationReport& r) {
                      std::mt19937 rng(seed + 100);
                      int bad = 0;
                      for (int i = 0; i < 30; ++i) {
                        const Rational omega = i % 2 ? Rational(1) : Rational(-2, 3);
                        HeckeElt a = HeckeElt::basis(hecke::random_element(e, 2, rng));
                        a += HeckeElt::basis(hecke::random_element(e, 2, rng), Polynomial(Rational(1, 2)));
                        const HeckeElt b = HeckeElt::basis(hecke::random_element(e, 2, rng), Polynomial::x());
                        const auto lhs = hecke::central_reduction(a * b, omega);
                        const auto rhs = hecke::central_mul(hecke::central_reduction(a, omega), hecke::central_reduction(b, omega));
                        bad += !(lhs == rhs);
                      }
                      exact(r, str(bad), "0");
                    }});
    plan.push_back({"hecke.pi_power", {{"e", str(e)}}, [e](VerificationReport& r) {
                      const HeckeElt pi = HeckeElt::basis(ExtAffineElt::pi(e));
                      bool ok = pi * HeckeElt::basis(ExtAffineElt::pi_power(-1, e)) == HeckeElt::unit(e);
                      for (int k = 0; k <= 2 * e; ++k) ok = ok && hecke::power(pi, k) == HeckeElt::basis(ExtAffineElt::pi_power(k, e));
                      exact(r, ok ? "T_Pi^k = T_{Pi^k}" : "mismatch", "T_Pi^k = T_{Pi^k}");
                    }});
  }
}

// ---------------------------------------------------------------------------
// repth
// ---------------------------------------------------------------------------

template <class S>
bool etau_idempotent(int e, int q, int chi, double& err) {
  const auto et = repth::e_tau<S>(e, q, chi);
  const auto sq = et.context().group->order() <= 2000 ? repth::convolve(et, et) : repth::convolve_equivariant(et, et);
  err = sq.max_abs_diff(et);
  return sq == et;
}

inline void add_rep_checks(std::vector<PlannedCheck>& plan, const VerifyOptions& o) {
  using repth::FinHeckeElt;
  for (int e = 1; e <= o.max_e; ++e)
    for (int q : field_sizes(o.max_q)) {
      const auto& field = finglq::FiniteField::get(q);
      for (int chi = 0; chi < q - 1; ++chi) {
        const bool real = finglq::character_is_real(field, chi);
        const std::vector<std::pair<std::string, std::string>> p{{"e", str(e)}, {"q", str(q)}, {"chi", str(chi)}};
        plan.push_back({"rep.etau_idempotent", p, [=](VerificationReport& r) {
                          double err = 0;
                          if (real) {
                            const bool eq = etau_idempotent<Rational>(e, q, chi, err);
                            exact(r, eq ? "e_tau" : "differs", "e_tau");
                          } else {
                            etau_idempotent<Complex>(e, q, chi, err);
                            r.lhs = "e_tau*e_tau";
                            r.rhs = "e_tau";
                            r.tolerance = 1e-10;
                            r.abs_error = err;
                            r.settle();
                          }
                        }});
        plan.push_back({"rep.dim_tau", p, [=](VerificationReport& r) {
                          const auto et = repth::e_tau<Complex>(e, q, chi);
                          const auto g = et.context().group;
                          const Complex lhs = et.complex_at(g->identity()) * static_cast<double>(g->order());
                          const auto ind = repth::borel_induced(e, q, chi);
                          const Complex rank = repth::hecke_operator(et, *ind).trace();
                          approx(r, lhs, rank, 1e-10);
                        }});
        plan.push_back({"rep.tau_character", p, [=](VerificationReport& r) {
                          const auto ind = repth::borel_induced(e, q, chi);
                          const auto sub = repth::subrep_from_idempotent(repth::e_tau<Complex>(e, q, chi), *ind);
                          const auto from_idem = repth::character_of(sub.rep);
                          const auto formula = repth::char_generalized_trivial(e, q, chi);
                          const auto g = ind->rep.group;
                          // Oracle: the chi o det isotypic part of the induced module.
                          repth::ClassFunction det_chi{g, {}};
                          for (auto c : g->classes().reps) det_chi.values.push_back(repth::chi_det(g->element(c), chi));
                          const auto iso = repth::character_of(
                              repth::restrict_to_image(ind->rep, repth::isotypic_projector(ind->rep, det_chi)));
                          Worst w;
                          for (std::size_t c = 0; c < formula.values.size(); ++c) {
                            w.see(formula.values[c], iso.values[c]);
                            w.see(formula.values[c], from_idem.values[c]);
                            if (chi == 0) w.see(formula.values[c], 1.0);
                          }
                          w.put(r, 1e-8);
                        }});
        plan.push_back({"rep.alvis_curtis", p, [=](VerificationReport& r) {
                          const auto g = finglq::general_linear(e, q);
                          const auto tau = repth::char_generalized_trivial(e, q, chi);
                          const auto st = repth::steinberg_char(e, q, chi);
                          Worst w;
                          int n = 0;
                          for (std::size_t c = 0; c < g->classes().reps.size(); ++c)
                            if (finglq::elliptic_regular(g->element(g->classes().reps[c]))) {
                              w.see(tau.values[c], static_cast<double>(neg_one_pow(e - 1)) * st.values[c]);
                              ++n;
                            }
                          w.put(r, 1e-7);
                          r.note = std::to_string(n) + " elliptic regular classes";
                        }});
        plan.push_back({"rep.trace_formula", p, [=](VerificationReport& r) {
                          const auto ind = repth::borel_induced(e, q, chi);
                          const auto g = ind->rep.group;
                          std::vector<std::uint32_t> gammas;
                          if (g->order() <= 100)
                            for (std::uint32_t x = 0; x < g->order(); ++x) gammas.push_back(x);
                          else
                            gammas = g->classes().reps;
                          Worst w;
                          for (const auto& idem : {repth::e_tau<Complex>(e, q, chi), repth::e_steinberg<Complex>(e, q, chi)})
                            for (auto gamma : gammas) {
                              const auto t = repth::trace_formula_9_5(gamma, idem, *ind);
                              w.see(t.lhs, t.rhs);
                            }
                          w.put(r, 1e-8);
                        }});
      }
      plan.push_back({"rep.conjugation_average", {{"e", str(e)}, {"q", str(q)}, {"triples", "20"}}, [=, seed = o.seed](VerificationReport& r) {
                        const auto st = repth::steinberg_rep(e, q, 0);
                        const auto ind = repth::borel_induced(e, q, 0);
                        const auto tau = repth::subrep_from_idempotent(repth::e_tau<Complex>(e, q, 0), *ind).rep;
                        std::mt19937 rng(seed + 7 * e + q);
                        std::normal_distribution<double> nd;
                        Worst w;
                        for (int i = 0; i < 20; ++i) {
                          const auto& rep = i % 2 ? tau : st;
                          const int d = rep.dim();
                          repth::CMatrix t(d, d);
                          Eigen::VectorXcd v(d);
                          for (int a = 0; a < d; ++a) {
                            v(a) = Complex(nd(rng), nd(rng));
                            for (int b = 0; b < d; ++b) t(a, b) = Complex(nd(rng), nd(rng));
                          }
                          const auto form = repth::invariant_form(rep);
                          w.see(repth::conj_avg(t, rep, form, repth::normalize(form, v)), t.trace());
                        }
                        w.put(r, 1e-8);
                      }});
      plan.push_back({"rep.coefficient_character", {{"e", str(e)}, {"q", str(q)}, {"elements", "10"}}, [=, seed = o.seed](VerificationReport& r) {
                        const auto st = repth::steinberg_rep(e, q, 0);
                        const auto chi = repth::character_of(st);
                        const auto form = repth::invariant_form(st);
                        std::mt19937 rng(seed + 11 * e + q);
                        std::normal_distribution<double> nd;
                        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(st.group->order() - 1));
                        Eigen::VectorXcd v(st.dim());
                        for (int a = 0; a < st.dim(); ++a) v(a) = Complex(nd(rng), nd(rng));
                        v = repth::normalize(form, v);
                        Worst w;
                        for (int i = 0; i < 10; ++i) {
                          const auto gamma = pick(rng);
                          w.see(repth::coefficient_average(st, form, v, gamma), chi(gamma));
                        }
                        w.put(r, 1e-8);
                      }});
    }
  if (o.max_e >= 2 && o.max_q >= 2)
    plan.push_back({"rep.frobenius_transport", {{"G", "GL(2,2)"}, {"H", "B"}, {"sigma", "trivial"}}, [seed = o.seed](VerificationReport& r) {
                      const auto b = finglq::enumerate_group(2, 2, finglq::SubgroupSpec::borel());
                      const auto t = repth::frobenius_transport_check(repth::det_character_rep(b, 0), finglq::general_linear(2, 2), 20, seed);
                      r.lhs = "max defect " + report::format_double(t.max_defect);
                      r.rhs = "0";
                      r.tolerance = 1e-9;
                      r.abs_error = std::max({t.max_defect, t.max_roundtrip_defect, t.unit_defect});
                      r.settle();
                    }});
  if (o.max_e >= 2 && o.max_q >= 3)
    plan.push_back({"rep.frobenius_transport", {{"G", "GL(2,3)"}, {"H", "B"}, {"sigma", "chi_1 x chi_0"}}, [seed = o.seed](VerificationReport& r) {
                      const auto b = finglq::enumerate_group(2, 3, finglq::SubgroupSpec::borel());
                      const auto t = repth::frobenius_transport_check(repth::diagonal_character_rep(b, {1, 0}), finglq::general_linear(2, 3), 20, seed);
                      r.lhs = "max defect " + report::format_double(t.max_defect);
                      r.rhs = "0";
                      r.tolerance = 1e-9;
                      r.abs_error = std::max({t.max_defect, t.max_roundtrip_defect, t.unit_defect});
                      r.settle();
                    }});
}

// ---------------------------------------------------------------------------
// pseudocoef and charformula
// ---------------------------------------------------------------------------

inline void add_pseudocoef_checks(std::vector<PlannedCheck>& plan, const VerifyOptions& o) {
  for (int e = 1; e <= o.max_e; ++e)
    for (int q : field_sizes(o.max_q)) {
      const std::vector<std::pair<std::string, std::string>> p{{"e", str(e)}, {"q", str(q)}};
      plan.push_back({"pseudocoef.laumon_average", p, [=](VerificationReport& r) {
                        const pseudocoef::PseudoCoefParams pp{e, 1, q, 1};
                        const auto f0 = pseudocoef::laumon_f0(pp);
                        const auto mean = pseudocoef::mean_kottwitz_ep(pp);
                        exact(r, mean == f0 ? "f_0" : mean.str(), "f_0");
                      }});
      for (int ep : {1, 2})
        plan.push_back({"pseudocoef.projection", {{"e", str(e)}, {"eprime", str(ep)}, {"q", str(q)}}, [=](VerificationReport& r) {
                          const pseudocoef::PseudoCoefParams pp{e, ep, q, 1};
                          const auto red = hecke::central_reduction(pseudocoef::assemble_F0(pp), 1);
                          exact(r, red == pseudocoef::laumon_f0(pp) ? "f_0" : red.str(), "f_0");
                        }});
      plan.push_back({"char.constant_collapse", p, [=](VerificationReport& r) {
                        exact(r, charformula::constant_CS(e, 1, q) * Rational(neg_one_pow(e - 1)), Rational(1));
                      }});
    }
  plan.push_back({"pseudocoef.support_filter", {{"max_N", "12"}}, [](VerificationReport& r) {
                    int cases = 0, unique = 0;
                    for (int n = 1; n <= 12; ++n)
                      for (int ep = 1; ep <= n; ++ep) {
                        if (n % ep) continue;
                        for (int nu = 0; nu < n; ++nu) {
                          if (std::gcd(nu, n) != 1) continue;
                          ++cases;
                          const auto res = pseudocoef::support_filter(n, ep, nu);
                          unique += res.unique_empty() && res.triples[0].l == nu;
                        }
                      }
                    exact(r, str(unique) + " unique", str(cases) + " unique");
                  }});
  for (int e = 1; e <= o.max_e; ++e)
    plan.push_back({"char.power_identity", {{"e", str(e)}}, [=](VerificationReport& r) {
                      exact(r, charformula::power_identity_check(e, 2) ? "a^k T_{Pi^k}" : "mismatch", "a^k T_{Pi^k}");
                    }});
  plan.push_back({"char.prefactor_collapse", {{"max_N", "10"}}, [](VerificationReport& r) {
                    Worst w;
                    const Complex c(0.6, -0.8);
                    for (int n = 1; n <= 10; ++n)
                      for (int nu = 0; nu < n; ++nu) {
                        if (std::gcd(nu, n) != 1) continue;
                        const int eps = weyl::epsilon(weyl::ParahoricType::empty(n));
                        const Complex expect = static_cast<double>(neg_one_pow(eps < 0 ? nu : 0)) * std::pow(c, nu);
                        w.see(charformula::theorem12_prefactor(nu, n, n, c), expect);
                      }
                    w.put(r, 1e-12);
                  }});
  for (int e = 1; e <= o.max_e; ++e)
    for (int q : field_sizes(o.max_q))
      for (int chi = 0; chi < q - 1; ++chi)
        plan.push_back({"char.elliptic_formula", {{"e", str(e)}, {"q", str(q)}, {"chi", str(chi)}}, [=](VerificationReport& r) {
                          const auto g = finglq::general_linear(e, q);
                          charformula::CharFormulaParams cp;
                          cp.e = e;
                          cp.q = q;
                          cp.chi = chi;
                          Worst w;
                          for (auto c : g->classes().reps)
                            if (finglq::elliptic_regular(g->element(c))) {
                              const auto v = charformula::theorem11_rhs(g->element(c), cp);
                              w.see(v.lhs, v.rhs);
                            }
                          w.put(r, 1e-7);
                        }});
}

/// Checks in canonical order.
inline std::vector<PlannedCheck> plan_all(const VerifyOptions& o) {
  std::vector<PlannedCheck> plan;
  add_weyl_checks(plan, o);
  add_hecke_checks(plan, o);
  add_rep_checks(plan, o);
  add_pseudocoef_checks(plan, o);
  return plan;
}

/// Runs the plan on a small worker pool; results keep the plan order.
inline std::vector<VerificationReport> run_all(const std::vector<PlannedCheck>& plan, unsigned workers = 0) {
  if (workers == 0) workers = std::max(2u, std::thread::hardware_concurrency());
  std::vector<VerificationReport> out(plan.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < plan.size(); i = next++) out[i] = run_check(plan[i]);
  };
  std::vector<std::future<void>> pool;
  for (unsigned w = 0; w < workers; ++w) pool.push_back(std::async(std::launch::async, work));
  for (auto& f : pool) f.get();
  return out;
}

inline bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.status != Status::fail; });
}

}  // namespace hecke_forge::verify
