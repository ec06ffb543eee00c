// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Reads QFA_FIXTURES (fixture directory) and QFA_CLI (workbench
// binary) from the environment.
#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "qfa/current.hpp"
#include "qfa/modcat.hpp"
#include "qfa/pca.hpp"
#include "qfa/quotient.hpp"
#include "qfa/report.hpp"
#include "qfa/voa.hpp"
#include "qfa/zhu.hpp"

using namespace qfa;
using Clock = std::chrono::steady_clock;

namespace {

std::string fixtures, cli;

std::string fx(const std::string& name) { return fixtures + "/" + name; }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

TruncationWindow win(const VoaData& voa) {
  TruncationWindow w;
  w.max_weight = voa.window.max_weight;
  return w;
}

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args, const std::string& tag) {
  std::string path = "/tmp/qfa_acceptance_" + tag + ".txt";
  std::string cmd = cli + " " + args + " > " + path + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  CliResult r;
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

bool crit1_borcherds() {
  auto t0 = Clock::now();
  VoaData voa = load_voa(fx("heisenberg_w4.json"));
  BorcherdsReport base = check_borcherds(voa, -3, 3, -3, 3, -3, 3);
  if (!base.residuals.empty() || base.checked == 0) return false;
  for (int i = 0; i < 20; ++i) {
    char name[64];
    std::snprintf(name, sizeof(name), "heisenberg_mut%02d.json", i);
    VoaData mut = load_voa(fx(name));
    BorcherdsReport r = check_borcherds(mut, -3, 3, -3, 3, -3, 3);
    if (r.residuals.empty()) return false;
  }
  return seconds_since(t0) < 30.0;
}

bool crit2_current_lie() {
  VoaData voa = load_voa(fx("heisenberg_w4.json"));
  long agreed = 0;
  for (int u = 0; u < voa.dim(); ++u)
    for (int v = 0; v < voa.dim(); ++v)
      for (int p = -3; p <= 3; ++p)
        for (int q = -3; q <= 3; ++q) {
          int m = p - voa.weights[u] + 1;
          int n = q - voa.weights[v] + 1;
          try {
            CurrentElement raw =
                normal_form_mod_partial(voa, raw_bracket(voa, u, p, v, q));
            if (!(raw == bracket(voa, j_term(m, u), j_term(n, v))))
              return false;
            ++agreed;
          } catch (const OutOfWindowError&) {
          }
        }
  if (agreed == 0) return false;
  LieCheckReport lie = check_lie_properties(voa, 3);
  if (!lie.skew_failures.empty() || !lie.jacobi_failures.empty()) return false;
  long hamiltonian_checked = 0;
  for (int u = 0; u < voa.dim(); ++u)
    for (int n = -4; n <= 4; ++n) {
      try {
        CurrentElement got =
            bracket(voa, j_term(0, voa.conformal_index), j_term(n, u));
        if (!(got == normal_form_mod_partial(voa, j_term(n, u, Rat(-n)))))
          return false;
        ++hamiltonian_checked;
      } catch (const OutOfWindowError&) {
      }
    }
  return hamiltonian_checked > 0;
}

bool crit3_trivial_exact() {
  auto t0 = Clock::now();
  VoaData voa = load_voa(fx("trivial.json"));
  TruncationWindow w = win(voa);
  for (int n = 0; n <= 3; ++n)
    for (int d = -3; d <= 3; ++d) {
      QuotientSlice s = compute_quotient_slice(voa, n, d, w);
      if (!s.converged) return false;
      if (s.dim_upper != (d == 0 ? 1 : 0)) return false;
    }
  for (int n = 0; n <= 3; ++n) {
    SpectrumReport s = spectrum(voa, n, w);
    if (s.provisional || !s.omega_in_gamma) return false;
    if (s.omega.size() != 1 || s.omega[0].first != 0) return false;
    if (s.gap != 0 || s.ell != 1) return false;
    FiniteAlgebra a = extract_finite_algebra(voa, n, n, w);
    if (a.dim != 1) return false;
  }
  FiniteAlgebra big = extract_finite_algebra(voa, 3, 3, w);
  CornerAlgebra corner = corner_subalgebra(big, 0, {Rat(0)});
  RoundTripReport rt =
      round_trip_check(big, corner, regular_module(corner.algebra), 0, 0, 3);
  if (!rt.iso) return false;
  return seconds_since(t0) < 5.0;
}

bool crit4_negative_control() {
  int prev = -1;
  for (const char* name :
       {"heisenberg_w2.json", "heisenberg_w3.json", "heisenberg_w4.json"}) {
    VoaData voa = load_voa(fx(name));
    QuotientSlice s = compute_quotient_slice(voa, 0, 0, win(voa));
    if (s.converged) return false;
    if (s.dim_upper <= prev) return false;
    prev = s.dim_upper;
  }
  CliResult r = run_cli("--command surjection-check --input " +
                            fx("heisenberg_w4.json") +
                            " --n-max 0 --d-min 0 --d-max 0",
                        "crit4");
  return r.exit_code == 2 &&
         r.output.find("INCONCLUSIVE") != std::string::npos;
}

// independent enumerator: count strict bounded sequences by descending DFS
long count_strict(int k, int d, int n, int max_part) {
  if (k == 0) return d == 0 ? 1 : 0;
  long total = 0;
  for (int part = max_part; part >= -n; --part)
    total += count_strict(k - 1, d - part, n, part - 1);
  return total;
}

bool crit5_dim_bounds() {
  auto t0 = Clock::now();
  for (const char* name : {"poisson_dual_numbers.json", "poisson_nilp.json",
                           "poisson_xy_y.json"}) {
    PoissonAlgebraData p = load_poisson(fx(name));
    if (p.dim() > 3) return false;
    long r = p.dim() - 1;
    for (int n = 0; n <= 3; ++n)
      for (int d = -4; d <= 4; ++d) {
        long expect = 0, rpow = 1;
        for (int k = 0;; ++k) {
          long least = -static_cast<long>(k) * n +
                       static_cast<long>(k) * (k - 1) / 2;
          if (k > n && least > d) break;
          expect += rpow * count_strict(k, d, n, d + (k - 1) * n);
          rpow *= r;
          if (rpow == 0) break;
        }
        if (dim_bound(p, n, d).bound != expect) return false;
      }
  }
  return seconds_since(t0) < 10.0;
}

bool well_ordered(const StraightStep& s) {
  std::vector<int> base;
  for (const auto& [d, e] : s.before) base.push_back(d);
  for (const auto& [child, c] : s.after) {
    if (child.size() < s.before.size()) continue;
    if (child.size() > s.before.size()) return false;
    std::vector<int> parts;
    for (const auto& [d, e] : child) parts.push_back(d);
    if (!(parts > base)) return false;
  }
  return true;
}

bool crit6_straighten() {
  std::mt19937 rng(20240815);
  std::uniform_int_distribution<int> len_d(1, 4), part_d(-3, 5), n_d(0, 3);
  for (const char* name : {"poisson_nilp.json", "poisson_xy_y.json"}) {
    PoissonAlgebraData p = load_poisson(fx(name));
    std::uniform_int_distribution<int> elem_d(0, p.dim() - 1);
    for (int trial = 0; trial < 100; ++trial) {
      int n = n_d(rng);
      LoopMono m;
      int len = len_d(rng);
      for (int i = 0; i < len; ++i) m.emplace_back(part_d(rng), elem_d(rng));
      StraightenResult res;
      try {
        res = straighten(p, m, Rat(1), n);
      } catch (const StepLimitExceededError&) {
        return false;
      }
      for (const auto& [t, c] : res.poly.terms)
        if (!strictly_decreasing_parts(t)) return false;
      for (const auto& s : res.steps) {
        if (!replay_step(p, n, s)) return false;
        if (s.rule == StraightStep::Rule::Rewrite && !well_ordered(s))
          return false;
      }
    }
  }
  return true;
}

bool crit7_ideal_identity() {
  for (const char* name :
       {"poisson_dual_numbers.json", "poisson_nilp.json", "poisson_xy_y.json",
        "poisson_xy_z.json"}) {
    PoissonAlgebraData p = load_poisson(fx(name));
    PcaIdentityReport rep = poisson_ideal_identity_check(p, 3);
    if (!rep.failures.empty() || rep.checked == 0) return false;
  }
  return true;
}

bool crit8_spectrum_laws() {
  VoaData voa = load_voa(fx("trivial.json"));
  TruncationWindow w = win(voa);
  for (int n = 0; n <= 3; ++n) {
    SpectrumReport s = spectrum(voa, n, w);
    if (s.provisional) continue;  // law applies to converged spectra
    if (!s.omega_in_gamma) return false;
    for (const auto& [root, mult] : s.omega)
      if (mult > s.ell) return false;
    for (int d = -2; d <= 2; ++d) {
      QuotientSlice slice = compute_quotient_slice(voa, n, d, w);
      if (!slice.converged) continue;
      DensityReport dr = bimodule_density_check(voa, n, d, w);
      if (!dr.surjective) return false;
    }
  }
  return true;
}

bool crit9_functor_round_trip() {
  struct Shape {
    std::vector<std::vector<Rat>> comps;
    int n, gap, cap;
  };
  std::vector<Shape> shapes = {
      {{{Rat(0), Rat(1), Rat(2)}}, 1, 0, 2},
      {{{Rat(0), Rat(1), Rat(2), Rat(3)}, {Rat(1), Rat(2), Rat(3)}}, 1, 1, 2},
      {{{Rat(0), Rat(1), Rat(2)}, {Rat(1, 2), Rat(3, 2), Rat(5, 2)}}, 1, 0,
       1},
  };
  std::mt19937 rng(20240816);
  for (const auto& sh : shapes) {
    std::vector<Rat> labels;
    for (const auto& c : sh.comps)
      for (const Rat& l : c)
        if (std::find(labels.begin(), labels.end(), l) == labels.end())
          labels.push_back(l);
    FiniteAlgebra big = make_sum_of_matrix_algebras(sh.cap, labels, sh.comps);
    std::vector<Rat> gn = gamma_m(gamma_zero(labels), sh.n);
    std::vector<Rat> keep;
    for (const Rat& l : labels)
      if (std::find(gn.begin(), gn.end(), l) != gn.end()) keep.push_back(l);
    CornerAlgebra corner = corner_subalgebra(big, sh.n, keep);

    GradedModuleShadow p = projective_shadow(big, corner, sh.cap);
    GradedModuleShadow dd = restricted_dual(restricted_dual(p));
    if (!(dd.levels == p.levels)) return false;

    std::uniform_int_distribution<int> mult_d(0, 2);
    int done = 0;
    while (done < 10) {
      FinModule x;
      bool first = true;
      for (int c = 0; c < static_cast<int>(sh.comps.size()); ++c) {
        int mult = mult_d(rng);
        if (mult == 0) continue;
        FinModule part = standard_module(corner, sh.comps, c, mult);
        x = first ? part : direct_sum(x, part);
        first = false;
      }
      if (first || x.dim > 4) continue;
      RoundTripReport r =
          round_trip_check(big, corner, x, sh.n, sh.gap, sh.cap);
      if (!r.iso || r.dim_left != r.dim_right) return false;
      ++done;
    }
  }
  return true;
}

bool crit10_determinism() {
  std::vector<std::string> runs = {
      "--command quotient-dims --input " + fx("trivial.json") +
          " --n-max 2 --d-min -2 --d-max 2 --format json",
      "--command zhu-poisson --input " + fx("heisenberg_w4.json") +
          " --format json",
      "--command pca-bounds --input " + fx("poisson_nilp.json") +
          " --n-max 2 --d-min -2 --d-max 2 --rounds 1 --format json",
      "--command spectrum --input " + fx("trivial.json") +
          " --n-max 2 --format json",
      "--command functor-check --format json",
      "--command zhu-poisson --input " + fx("heisenberg_w2.json") +
          " --format json",
      "--command zhu-poisson --input " + fx("heisenberg_w3.json") +
          " --format json",
      "--command pca-bounds --input " + fx("poisson_dual_numbers.json") +
          " --format json",
      "--command pca-bounds --input " + fx("poisson_xy_y.json") +
          " --format json",
      "--command pca-bounds --input " + fx("poisson_xy_z.json") +
          " --format json",
  };
  for (size_t i = 0; i < runs.size(); ++i) {
    CliResult a = run_cli(runs[i], "det_a");
    CliResult b = run_cli(runs[i], "det_b");
    if (a.exit_code != b.exit_code || a.output != b.output) return false;
    if (a.output.empty()) return false;
    Report parsed = parse_report_json(a.output);
    if (emit_json(parsed) != a.output) return false;
  }
  return true;
}

}  // namespace

int main() {
  const char* fdir = std::getenv("QFA_FIXTURES");
  const char* cbin = std::getenv("QFA_CLI");
  if (!fdir || !cbin) {
    std::cerr << "QFA_FIXTURES and QFA_CLI must be set\n";
    return 2;
  }
  fixtures = fdir;
  cli = cbin;

  struct Criterion {
    const char* label;
    bool (*run)();
  };
  std::vector<Criterion> criteria = {
      {"criterion 1 (Borcherds suite)", crit1_borcherds},
      {"criterion 2 (current Lie consistency)", crit2_current_lie},
      {"criterion 3 (trivial exactness)", crit3_trivial_exact},
      {"criterion 4 (negative control)", crit4_negative_control},
      {"criterion 5 (spanning bound agreement)", crit5_dim_bounds},
      {"criterion 6 (straightening certificates)", crit6_straighten},
      {"criterion 7 (ideal identity)", crit7_ideal_identity},
      {"criterion 8 (spectrum laws)", crit8_spectrum_laws},
      {"criterion 9 (functor round trip)", crit9_functor_round_trip},
      {"criterion 10 (determinism and round trip)", crit10_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      std::cout << c.label << ": FAIL (" << e.what() << ")\n";
      ++failures;
      continue;
    }
    std::cout << c.label << (ok ? ": PASS" : ": FAIL") << "\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
