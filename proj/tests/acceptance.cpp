// Acceptance run: one PASS/FAIL line per criterion, followed by the measured
// values behind it. The exit status is non-zero only if the harness itself
// breaks (an exception or a crashed subprocess); a criterion that does not
// hold is reported as FAIL and left at that.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cayleysep/cuts.hpp"
#include "cayleysep/groups.hpp"
#include "cayleysep/hyperbolicity.hpp"
#include "cayleysep/profiles.hpp"
#include "cayleysep/rng.hpp"

using namespace cayleysep;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok: " : "violated: ") + what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::size_t checked = 0, mismatches = 0;
  auto compare = [&](const Graph& g, const std::string& name) {
    const auto brute = cut_brute(g);
    const auto exact = cut_exact(g);
    ++checked;
    if (!exact.exact() || exact.upper_value() != brute.value) {
      ++mismatches;
      o.note("mismatch on " + name + ": brute " + std::to_string(brute.value) + ", exact " +
             std::to_string(exact.lower_value()) + ".." + std::to_string(exact.upper_value()));
    }
  };
  Rng rng(20240601);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 4 + rng.below(9);
    const std::size_t extra = rng.below(n * (n - 1) / 2 - (n - 1) + 1);
    compare(builders::random_connected_graph(n, extra, rng), "random #" + std::to_string(i));
  }
  for (std::size_t n = 1; n <= 14; ++n) {
    compare(builders::path_graph(n), "P_" + std::to_string(n));
    compare(builders::complete_graph(n), "K_" + std::to_string(n));
    if (n >= 3) compare(builders::cycle_graph(n), "C_" + std::to_string(n));
  }
  const double secs = seconds_since(start);
  o.require(mismatches == 0, std::to_string(checked) + " graphs, " +
                                 std::to_string(mismatches) + " mismatches");
  o.require(secs < 60.0, "runtime " + fmt("%.1f s", secs) + " < 60 s");
  return o;
}

Outcome closed_forms() {
  Outcome o;
  std::size_t wrong = 0;
  for (std::size_t n = 2; n <= 14; ++n) {
    auto check = [&](const Graph& g, std::size_t want, const std::string& name) {
      const auto b = cut_exact(g);
      if (!b.exact() || b.upper_value() != want) {
        ++wrong;
        o.note(name + " gave " + std::to_string(b.upper_value()));
      }
    };
    check(builders::path_graph(n), 1, "P_" + std::to_string(n));
    check(builders::complete_graph(n), (n + 1) / 2, "K_" + std::to_string(n));
    if (n >= 3) check(builders::cycle_graph(n), 2, "C_" + std::to_string(n));
  }
  o.require(wrong == 0, "P_n = 1, C_n = 2, K_n = ceil(n/2) for n <= 14, all exact");
  return o;
}

Outcome free_groups_bounded() {
  Outcome o;
  auto f = catalog_group("free:2");
  const Ball host = cayley_ball(*f, 6);
  std::string values;
  bool all_one = true;
  for (int r = 0; r <= 6; ++r) {
    const Ball b = sub_ball(host, r);
    const auto c = cut_exact(b.graph);
    all_one = all_one && c.exact() && c.upper_value() == 1;
    values += (r ? ", " : "") + std::to_string(c.upper_value());
  }
  o.require(all_one, "exact cut of B_0..B_6 = [" + values + "]");
  ProfileOptions po;
  po.max_n = host.graph.vertex_count();
  const auto p = sep_profile(Source{"free:2", f, std::nullopt}, po);
  const auto fit = fit_exponent(p.points);
  o.require(std::abs(fit.slope) <= 0.05,
            "profile slope " + fmt("%.4f", fit.slope) + " over " + std::to_string(fit.count) +
                " points, |slope| <= 0.05");
  return o;
}

struct LatticeRun {
  Profile z2, z3;
  double seconds = 0.0;
};

LatticeRun lattice_profiles() {
  LatticeRun run;
  const auto start = std::chrono::steady_clock::now();
  ProfileOptions po;
  po.budget_ms = 10000;
  po.max_n = 2 * 24 * 24 + 2 * 24 + 1;
  run.z2 = sep_profile(resolve_source("zd:2"), po);
  po.max_n = 833;  // |B_8| in Z^3
  run.z3 = sep_profile(resolve_source("zd:3"), po);
  run.seconds = seconds_since(start);
  return run;
}

Outcome lattice_exponents(const LatticeRun& run) {
  Outcome o;
  bool exact_small = true;
  for (const auto& c : run.z2.candidates) {
    if (c.radius >= 0 && c.radius <= 7 && !c.bounds.exact()) exact_small = false;
  }
  o.require(exact_small, "zd:2 balls with r <= 7 solved exactly");
  const auto f2 = fit_exponent(run.z2.points, 41, 1201);  // |B_4| .. |B_24|
  o.require(f2.slope >= 0.38 && f2.slope <= 0.62,
            "zd:2 slope " + fmt("%.4f", f2.slope) + " (r in [4, 24], " +
                std::to_string(f2.count) + " points, r^2 " + fmt("%.3f", f2.r_squared) + ")");
  const auto f3 = fit_exponent(run.z3.points, 7, 833);  // |B_1| .. |B_8|
  o.require(f3.slope >= 0.55 && f3.slope <= 0.78,
            "zd:3 slope " + fmt("%.4f", f3.slope) + " (r in [1, 8], " +
                std::to_string(f3.count) + " points, r^2 " + fmt("%.3f", f3.r_squared) + ")");
  o.require(run.seconds < 600.0, "combined runtime " + fmt("%.0f s", run.seconds) + " < 600 s");
  return o;
}

Outcome gap_theorem() {
  Outcome o;
  const auto z = gap_check(*catalog_group("zd:2"), 10);
  o.require(z.all_pass() && z.rows.size() == 10,
            "zd:2 (M=" + std::to_string(z.relator_bound) + ") r <= 10 all pass");
  const auto h = gap_check(*catalog_group("heis"), 6);
  o.require(h.all_pass() && h.rows.size() == 6,
            "heis (M=" + std::to_string(h.relator_bound) + ") r <= 6 all pass");
  double lo = 1e9, hi = 0.0;
  bool exact = true;
  std::string ratios;
  for (const auto& r : z.rows) {
    if (r.r < 3 || r.r > 7) continue;
    exact = exact && r.exact;
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
    ratios += (ratios.empty() ? "" : ", ") + fmt("%.3f", r.ratio);
  }
  o.require(exact, "zd:2 cuts for r in [3, 7] are exact");
  o.require(lo >= 0.5, "zd:2 cut(B_r)/r for r = 3..7: [" + ratios + "], band [" +
                           fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + "], c >= 0.5");
  return o;
}

Outcome surface_smallness() {
  Outcome o;
  auto s = catalog_group("surface:2");
  const Ball host = largest_cayley_ball(*s, 5);
  o.note("largest ball built: radius " + std::to_string(host.radius) + ", " +
         std::to_string(host.graph.vertex_count()) + " vertices");
  o.require(host.radius >= 4, "a radius >= 4 fits the vertex budget");
  std::vector<double> ratio;
  for (int r = 1; r <= host.radius; ++r) {
    const Ball b = sub_ball(host, r);
    HeuristicOptions ho;
    ho.anchors = inverse_anchors(*s, host, r);
    const auto up = cut_heuristic(b.graph, 0, b.dist_from_center, ho);
    ExactOptions eo;
    eo.budget_ms = 2000;
    eo.layering = b.dist_from_center;
    eo.heuristic = ho;
    const auto bracket = cut_exact(b.graph, eo);
    const double q = static_cast<double>(up.value) / std::sqrt(b.graph.vertex_count());
    ratio.push_back(q);
    o.note("r=" + std::to_string(r) + " n=" + std::to_string(b.graph.vertex_count()) +
           " heuristic upper " + std::to_string(up.value) + ", anytime bracket [" +
           std::to_string(bracket.lower_value()) + ", " + std::to_string(bracket.upper_value()) +
           "], upper/sqrt(n) " + fmt("%.4f", q));
    o.require(up.value <= static_cast<std::size_t>(8 * r),
              "r=" + std::to_string(r) + ": upper " + std::to_string(up.value) + " <= 8r");
    o.require(bracket.lower_value() <= up.value,
              "r=" + std::to_string(r) + ": anytime lower bound below the heuristic value");
  }
  for (int r = 4; r <= host.radius; ++r) {
    o.require(ratio[r - 1] < ratio[r - 2],
              "upper/sqrt(n) decreases from r=" + std::to_string(r - 1) + " to r=" +
                  std::to_string(r) + " (" + fmt("%.4f", ratio[r - 2]) + " -> " +
                  fmt("%.4f", ratio[r - 1]) + ")");
  }
  return o;
}

Outcome plane_lower_bound(const LatticeRun& run) {
  Outcome o;
  std::size_t checked = 0;
  double worst = 1e9;
  for (const auto& c : run.z2.candidates) {
    if (c.radius < 4 || c.radius > 24) continue;
    // the profile at n is the envelope, which is at least this candidate
    std::size_t env = 0;
    for (const auto& p : run.z2.points) {
      if (p.n <= c.n) env = std::max(env, p.cut_lower);
    }
    ++checked;
    const double ratio = env / std::sqrt(static_cast<double>(c.n));
    worst = std::min(worst, ratio);
    if (ratio < 0.1) o.note("below at r=" + std::to_string(c.radius));
  }
  o.require(checked == 21 && worst >= 0.1,
            std::to_string(checked) + " ball candidates, min profile/sqrt(n) " +
                fmt("%.3f", worst) + " >= 0.1");
  return o;
}

Outcome hyperbolicity_witnesses() {
  Outcome o;
  auto z = catalog_group("zd:2");
  for (int L : {16, 32, 64}) {
    const auto s = find_distorted_cycle(*z, L, Rational(2));
    bool ok = s.status == WitnessStatus::Found;
    std::string text = "zd:2 L=" + std::to_string(L) + ": " + to_string(s.status);
    if (ok) {
      const auto& w = *s.witness;
      const auto again = verify_witness(*z, w.keys, w.ambient_radius);
      ok = w.length >= static_cast<std::size_t>(L) && !(again.distortion > Rational(2)) &&
           again.distortion == w.distortion;
      text += ", length " + std::to_string(w.length) + ", distortion " + again.distortion.str() +
              " (" + w.construction + "), re-verified";
    }
    o.require(ok, text);
  }
  auto f = catalog_group("free:2");
  bool all_exhausted = true;
  for (int L = 3; L <= 12; ++L) {
    const auto s = find_distorted_cycle(*f, L);
    all_exhausted = all_exhausted && s.status == WitnessStatus::Exhausted && !s.witness;
  }
  o.require(all_exhausted, "free:2 L=3..12: none (exhausted)");
  const auto fb = bigon_fatness_scan(*f, 3);
  int fmax = 0;
  for (const auto& b : fb.top) fmax = std::max(fmax, b.max_layer_diameter);
  o.require(fmax == 0, "free:2 bigons at radius 3 (largest within the ambient limit): " +
                           std::to_string(fb.pairs_scanned) + " pairs, max fatness " +
                           std::to_string(fmax));
  const auto zb = bigon_fatness_scan(*z, 10);
  const int zmax = zb.top.empty() ? 0 : zb.top.front().max_layer_diameter;
  o.require(zmax >= 4, "zd:2 bigons at radius 10: max fatness " + std::to_string(zmax));
  return o;
}

Outcome kappa_values() {
  Outcome o;
  auto z = catalog_group("zd:2");
  auto f = catalog_group("free:2");
  const int a = kappa(*z, 13), b = kappa(*z, 24), c = kappa(*z, 25), d = kappa(*f, 17);
  o.require(a == 2 && b == 2 && c == 3 && d == 2,
            "kappa zd:2 (13, 24, 25) = (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                std::to_string(c) + "), kappa free:2 (17) = " + std::to_string(d));
  const auto gz = growth_table(*z, 3);
  const auto gf = growth_table(*f, 2);
  o.require(gz == std::vector<std::size_t>{1, 5, 13, 25} && gf == std::vector<std::size_t>{1, 5, 17},
            "growth tables match 2r^2+2r+1 and 2*3^r-1");
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome cli_determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "cayleysep_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  struct Run {
    std::string name, args, record;
  };
  const std::vector<Run> runs{
      {"cut", "cut --group zd:2 --radius 9 --mode exact --budget-ms 300 --seed 4", "cut.json"},
      {"profile",
       "profile --group heis --max-n 150 --candidates balls,spheres-thickened,random-connected "
       "--budget-ms 200 --seed 7",
       "profile/profile.json"},
      {"gapcheck", "gapcheck --group heis --max-r 4 --budget-ms 300", "gap.json"},
      {"witness", "witness --group zd:2 --length 32 --distortion 2", "witness.json"},
      {"bigons", "bigons --group heis --radius 3", "bigons.json"},
      {"bottleneck", "bottleneck --group zd:2 --radius 5 --delta 2", "bottleneck.json"},
      {"kappa", "kappa --group zd:2 --n 25,61,113 --compare --budget-ms 300", "kappa.json"},
  };
  for (const auto& run : runs) {
    std::vector<json> payloads;
    std::vector<std::string> csvs;
    for (int w : {1, 2, 4}) {
      const fs::path sub = dir / ("w" + std::to_string(w));
      const std::string out =
          run.name == "profile" ? (sub / "profile").string() : (sub / run.record).string();
      fs::create_directories(sub);
      const std::string cmd = std::string("\"") + CAYLEYSEP_CLI + "\" " + run.args +
                              " --workers " + std::to_string(w) + " --out \"" + out +
                              "\" > /dev/null";
      if (std::system(cmd.c_str()) != 0) throw std::runtime_error("command failed: " + cmd);
      payloads.push_back(json::parse(slurp(sub / run.record))["results"]);
      if (run.name == "profile") csvs.push_back(slurp(sub / "profile" / "profile.csv"));
    }
    bool same = payloads[0] == payloads[1] && payloads[1] == payloads[2];
    if (!csvs.empty()) same = same && csvs[0] == csvs[1] && csvs[1] == csvs[2];
    o.require(same, run.name + ": identical results for --workers 1, 2, 4");
  }
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  LatticeRun lattice;
  bool lattice_done = false;
  auto lattice_once = [&]() -> const LatticeRun& {
    if (!lattice_done) {
      lattice = lattice_profiles();
      lattice_done = true;
    }
    return lattice;
  };
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "closed forms", closed_forms},
      {3, "bounded separation for free groups", free_groups_bounded},
      {4, "lattice exponents", [&] { return lattice_exponents(lattice_once()); }},
      {5, "gap theorem at desk scale", gap_theorem},
      {6, "log-regime smallness for the surface group", surface_smallness},
      {7, "square-root lower bound on Z^2", [&] { return plane_lower_bound(lattice_once()); }},
      {8, "hyperbolicity witnesses", hyperbolicity_witnesses},
      {9, "inverse growth values", kappa_values},
      {10, "determinism across worker counts", cli_determinism},
  };
  int passed = 0;
  int harness_errors = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.note(std::string("harness error: ") + e.what());
      ++harness_errors;
    }
    passed += out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << " ("
              << fmt("%.1f s", seconds_since(start)) << ")\n";
    for (const auto& n : out.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
  }
  std::cout << passed << "/" << criteria.size() << " criteria pass\n";
  return harness_errors == 0 ? 0 : 1;
}
