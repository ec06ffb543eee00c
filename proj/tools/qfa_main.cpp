#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qfa/current.hpp"
#include "qfa/modcat.hpp"
#include "qfa/pca.hpp"
#include "qfa/quotient.hpp"
#include "qfa/report.hpp"
#include "qfa/voa.hpp"
#include "qfa/zhu.hpp"

using namespace qfa;

namespace {

struct Config {
  std::string input;
  std::string command;
  int n_max = 2;
  int d_min = -2;
  int d_max = 2;
  int max_weight = 0;  // 0: use the window stored in the input
  int depth = 2;
  int rounds = 1;
  int cap = 2;
  std::string format = "table";
  std::string out;
};

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string fmt_rats(const std::vector<Rat>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += format_rat(v[i]);
  }
  return s + "}";
}

std::string fmt_roots(const std::vector<std::pair<Rat, int>>& roots) {
  std::string s = "{";
  for (size_t i = 0; i < roots.size(); ++i) {
    if (i) s += ",";
    s += format_rat(roots[i].first) + ":" + std::to_string(roots[i].second);
  }
  return s + "}";
}

std::string fmt_coords(const SparseVec& v,
                       const std::vector<std::string>& syms) {
  if (v.is_zero()) return "0";
  std::string s;
  for (const auto& [i, c] : v.entries()) {
    if (!s.empty()) s += " + ";
    s += format_rat(c) + "*" + syms[i];
  }
  return s;
}

std::string fmt_poly(const PoissonAlgebraData& p, const StraightPoly& poly) {
  if (poly.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : poly.terms) {
    if (!s.empty()) s += " + ";
    s += format_rat(c) + "*" + mono_to_string(p, m);
  }
  return s;
}

TruncationWindow window_for(const VoaData& voa, const Config& cfg) {
  TruncationWindow w;
  w.max_weight = cfg.max_weight > 0 ? cfg.max_weight : voa.window.max_weight;
  w.depth = cfg.depth;
  w.rounds = cfg.rounds;
  return w;
}

VoaData load_voa_input(const Config& cfg) {
  if (cfg.input.empty()) throw ParseError("--input required");
  return load_voa(cfg.input);
}

PoissonAlgebraData load_poisson_input(const Config& cfg) {
  if (cfg.input.empty()) throw ParseError("--input required");
  return load_poisson(cfg.input);
}

int run_check_axioms(const Config& cfg, Report& rep) {
  VoaData voa = load_voa_input(cfg);
  AxiomReport a = check_axioms(voa);
  rep.meta["input"] = voa.name;
  rep.meta["checked"] = std::to_string(a.checked);
  rep.meta["skipped"] = std::to_string(a.skipped);
  rep.columns = {"failure"};
  for (const auto& f : a.failures) rep.rows.push_back({f});
  return a.failures.empty() ? 0 : 1;
}

int run_borcherds(const Config& cfg, Report& rep) {
  VoaData voa = load_voa_input(cfg);
  int b = cfg.n_max;
  BorcherdsReport r = check_borcherds(voa, -b, b, -b, b, -b, b);
  rep.meta["input"] = voa.name;
  rep.meta["bound"] = std::to_string(b);
  rep.meta["checked"] = std::to_string(r.checked);
  rep.meta["skipped"] = std::to_string(r.skipped);
  rep.columns = {"k", "m", "n", "u", "v", "w", "residual"};
  for (const auto& res : r.residuals)
    rep.rows.push_back({std::to_string(res.k), std::to_string(res.m),
                        std::to_string(res.n), voa.symbols[res.u],
                        voa.symbols[res.v], voa.symbols[res.w],
                        fmt_coords(res.residual, voa.symbols)});
  return r.residuals.empty() ? 0 : 1;
}

int run_quotient_dims(const Config& cfg, Report& rep) {
  VoaData voa = load_voa_input(cfg);
  TruncationWindow w = window_for(voa, cfg);
  rep.meta["input"] = voa.name;
  rep.meta["max_weight"] = std::to_string(w.max_weight);
  rep.columns = {"n", "d", "dim_upper", "converged", "dropped"};
  bool all_converged = true;
  for (int n = 0; n <= cfg.n_max; ++n)
    for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
      QuotientSlice s = compute_quotient_slice(voa, n, d, w);
      all_converged = all_converged && s.converged;
      rep.rows.push_back({std::to_string(n), std::to_string(d),
                          std::to_string(s.dim_upper), yesno(s.converged),
                          std::to_string(s.dropped)});
    }
  return all_converged ? 0 : 2;
}

int run_spectrum(const Config& cfg, Report& rep) {
  VoaData voa = load_voa_input(cfg);
  TruncationWindow w = window_for(voa, cfg);
  rep.meta["input"] = voa.name;
  rep.columns = {"n", "phi", "omega", "gamma0", "gap", "ell", "provisional"};
  int code = 0;
  for (int n = 0; n <= cfg.n_max; ++n) {
    try {
      SpectrumReport s = spectrum(voa, n, w);
      rep.rows.push_back({std::to_string(n), s.phi.to_string(),
                          fmt_roots(s.omega), fmt_rats(s.gamma0),
                          std::to_string(s.gap), std::to_string(s.ell),
                          yesno(s.provisional)});
      if (!s.omega_in_gamma) code = 1;
      if (s.provisional && code == 0) code = 2;
    } catch (const OutOfWindowError& e) {
      rep.rows.push_back({std::to_string(n), "out-of-window", "", "", "", "",
                          "yes"});
      if (code == 0) code = 2;
    }
  }
  return code;
}

int run_finite_algebra(const Config& cfg, Report& rep) {
  VoaData voa = load_voa_input(cfg);
  TruncationWindow w = window_for(voa, cfg);
  rep.meta["input"] = voa.name;
  try {
    FiniteAlgebra a = extract_finite_algebra(voa, cfg.n_max, cfg.n_max, w);
    rep.meta["n"] = std::to_string(a.n);
    rep.meta["dim"] = std::to_string(a.dim);
    rep.meta["gamma_n"] = fmt_rats(a.gamma_n);
    rep.columns = {"lambda", "mu", "dim"};
    for (const auto& b : a.blocks)
      rep.rows.push_back({format_rat(b.lambda), format_rat(b.mu),
                          std::to_string(b.basis.size())});
    return 0;
  } catch (const NotConvergedError& e) {
    rep.meta["inconclusive"] = e.what();
    return 2;
  } catch (const OutOfWindowError& e) {
    rep.meta["inconclusive"] = e.what();
    return 2;
  }
}

int run_zhu_poisson(const Config& cfg, Report& rep) {
  VoaData voa = load_voa_input(cfg);
  TruncationWindow w = window_for(voa, cfg);
  PoissonAlgebraData p = c2_quotient(voa, w);
  rep.meta["input"] = voa.name;
  rep.meta["dim"] = std::to_string(p.dim());
  rep.meta["c2_finite_within_window"] = yesno(p.c2_finite_within_window());
  rep.columns = {"weight", "dim", "classes"};
  for (size_t r = 0; r < p.profile.size(); ++r) {
    std::string syms;
    for (int i = 0; i < p.dim(); ++i)
      if (p.weights[i] == static_cast<int>(r))
        syms += (syms.empty() ? "" : ",") + p.symbols[i];
    rep.rows.push_back(
        {std::to_string(r), std::to_string(p.profile[r]), syms});
  }
  return 0;
}

int run_pca_bounds(const Config& cfg, Report& rep) {
  PoissonAlgebraData p = load_poisson_input(cfg);
  rep.meta["input"] = p.name;
  rep.meta["r"] = std::to_string(p.dim() - 1);
  rep.columns = {"n", "d", "bound", "saturated_upper"};
  for (int n = 0; n <= cfg.n_max; ++n)
    for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
      PcaDimReport b = dim_bound(p, n, d, p.complete ? cfg.rounds : 0);
      rep.rows.push_back({std::to_string(n), std::to_string(d),
                          std::to_string(b.bound),
                          b.saturated_upper ? std::to_string(*b.saturated_upper)
                                            : "-"});
    }
  return 0;
}

int run_straighten(const Config& cfg, Report& rep) {
  PoissonAlgebraData p = load_poisson_input(cfg);
  rep.meta["input"] = p.name;
  rep.meta["n"] = std::to_string(cfg.n_max);
  rep.columns = {"word", "normal_form", "steps", "certificate"};
  int code = 0;
  int a_max = std::max(1, cfg.d_max);
  for (int x = 0; x < p.dim(); ++x) {
    if (x == p.unit_index) continue;
    for (int y = x; y < p.dim(); ++y) {
      if (y == p.unit_index) continue;
      for (int a = 1; a <= a_max; ++a) {
        LoopMono word = {{a, x}, {a, y}};
        StraightenResult res = straighten(p, word, Rat(1), cfg.n_max);
        bool ok = true;
        for (const auto& s : res.steps)
          ok = ok && replay_step(p, cfg.n_max, s);
        if (!ok) code = 1;
        rep.rows.push_back({mono_to_string(p, word), fmt_poly(p, res.poly),
                            std::to_string(res.steps_used), yesno(ok)});
      }
    }
  }
  return code;
}

int run_surjection_check(const Config& cfg, Report& rep) {
  VoaData voa = load_voa_input(cfg);
  TruncationWindow w = window_for(voa, cfg);
  rep.meta["input"] = voa.name;
  rep.columns = {"n", "d", "verdict", "q_dim_upper", "pca_bound",
                 "slice_converged", "zhu_converged"};
  int code = 0;
  for (int n = 0; n <= cfg.n_max; ++n)
    for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
      SurjectionReport s = psi_surjection_check(voa, n, d, w);
      rep.rows.push_back({std::to_string(n), std::to_string(d),
                          verdict_name(s.verdict),
                          std::to_string(s.q_dim_upper),
                          std::to_string(s.pca_bound),
                          yesno(s.slice_converged), yesno(s.zhu_converged)});
      if (s.verdict == Verdict::Fail) code = 1;
      if (s.verdict == Verdict::Inconclusive && code == 0) code = 2;
    }
  return code;
}

int run_functor_check(const Config& cfg, Report& rep) {
  struct Shape {
    std::string name;
    std::vector<std::vector<Rat>> comps;
    int n, gap, cap;
  };
  std::vector<Shape> shapes = {
      {"{0}", {{Rat(0), Rat(1), Rat(2)}}, 1, 0, 2},
      {"{0,1}",
       {{Rat(0), Rat(1), Rat(2), Rat(3)}, {Rat(1), Rat(2), Rat(3)}},
       1, 1, 2},
      {"{0,1/2}",
       {{Rat(0), Rat(1), Rat(2)}, {Rat(1, 2), Rat(3, 2), Rat(5, 2)}},
       1, 0, 1},
  };
  rep.columns = {"omega0", "module", "dim", "round_trip", "dual_involutive"};
  int code = 0;
  for (const auto& sh : shapes) {
    std::vector<Rat> labels;
    for (const auto& c : sh.comps)
      for (const Rat& l : c)
        if (std::find(labels.begin(), labels.end(), l) == labels.end())
          labels.push_back(l);
    FiniteAlgebra big =
        make_sum_of_matrix_algebras(sh.cap, labels, sh.comps);
    std::vector<Rat> gn = gamma_m(gamma_zero(labels), sh.n);
    std::vector<Rat> keep;
    for (const Rat& l : labels)
      if (std::find(gn.begin(), gn.end(), l) != gn.end()) keep.push_back(l);
    CornerAlgebra corner = corner_subalgebra(big, sh.n, keep);
    GradedModuleShadow p = projective_shadow(big, corner, sh.cap);
    GradedModuleShadow dd = restricted_dual(restricted_dual(p));
    bool dual_ok = dd.levels == p.levels &&
                   dual_pairing_nondegenerate(p, restricted_dual(p));

    // deterministic family: standard modules with small multiplicities
    for (int c = 0; c < static_cast<int>(sh.comps.size()); ++c)
      for (int mult = 1; mult <= 2; ++mult) {
        FinModule x = standard_module(corner, sh.comps, c, mult);
        RoundTripReport r =
            round_trip_check(big, corner, x, sh.n, sh.gap, sh.cap);
        if (!r.iso) code = 1;
        rep.rows.push_back({sh.name,
                            "std(" + std::to_string(c) + ")x" +
                                std::to_string(mult),
                            std::to_string(x.dim), yesno(r.iso),
                            yesno(dual_ok)});
      }
    FinModule reg = regular_module(corner.algebra);
    RoundTripReport r =
        round_trip_check(big, corner, reg, sh.n, sh.gap, sh.cap);
    if (!r.iso || !dual_ok) code = 1;
    rep.rows.push_back({sh.name, "regular", std::to_string(reg.dim),
                        yesno(r.iso), yesno(dual_ok)});
  }
  (void)cfg;
  return code;
}

int run_command(const Config& cfg, Report& rep) {
  rep.command = cfg.command;
  if (cfg.command == "check-axioms") return run_check_axioms(cfg, rep);
  if (cfg.command == "borcherds") return run_borcherds(cfg, rep);
  if (cfg.command == "quotient-dims") return run_quotient_dims(cfg, rep);
  if (cfg.command == "spectrum") return run_spectrum(cfg, rep);
  if (cfg.command == "finite-algebra") return run_finite_algebra(cfg, rep);
  if (cfg.command == "zhu-poisson") return run_zhu_poisson(cfg, rep);
  if (cfg.command == "pca-bounds") return run_pca_bounds(cfg, rep);
  if (cfg.command == "straighten") return run_straighten(cfg, rep);
  if (cfg.command == "surjection-check") return run_surjection_check(cfg, rep);
  if (cfg.command == "functor-check") return run_functor_check(cfg, rep);
  throw ParseError("unknown command: " + cfg.command);
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"exact workbench for truncated current-algebra computations"};
  app.add_option("--input", cfg.input, "input JSON file");
  app.add_option("--command", cfg.command, "command to run")->required();
  app.add_option("--n-max", cfg.n_max, "largest module index n");
  app.add_option("--d-min", cfg.d_min, "smallest degree d");
  app.add_option("--d-max", cfg.d_max, "largest degree d");
  app.add_option("--max-weight", cfg.max_weight,
                 "truncation weight (0: use the input window)");
  app.add_option("--depth", cfg.depth, "annihilation relation depth");
  app.add_option("--rounds", cfg.rounds, "relation rounds / saturation rounds");
  app.add_option("--cap", cfg.cap, "level cap for functor checks");
  app.add_option("--format", cfg.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  app.add_option("--out", cfg.out, "write the report to a file");
  CLI11_PARSE(app, argc, argv);

  if (cfg.d_min > cfg.d_max || cfg.n_max < 0) {
    std::cerr << "error: empty parameter range\n";
    return 3;
  }
  Report rep;
  int code;
  try {
    code = run_command(cfg, rep);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InvariantViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotConvergedError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const OutOfWindowError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  std::string text =
      cfg.format == "json" ? emit_json(rep) : emit_table(rep);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 3;
    }
    out << text;
  }
  return code;
}
