// Command-line front end. Talks to the library only through cayleysep.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cayleysep/cayleysep.h"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUser = 2;

struct Failure {
  int code;
  std::string message;
};

void check(csep_status s) {
  if (s == CSEP_OK) return;
  throw Failure{s == CSEP_ERR_INTERNAL ? kExitInternal : kExitUser,
                std::string(csep_status_name(s)) + " error: " + csep_last_error()};
}

json take(char* text) {
  json j = json::parse(text);
  csep_string_free(text);
  return j;
}

struct Group {
  csep_group* h = nullptr;
  explicit Group(const std::string& spec) { check(csep_group_open(spec.c_str(), &h)); }
  ~Group() { csep_group_close(h); }
  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;
};

struct GraphHandle {
  csep_graph* h = nullptr;
  ~GraphHandle() { csep_graph_close(h); }
};

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw Failure{kExitUser, "cannot write " + path.string()};
  f << text;
  if (!f) throw Failure{kExitUser, "write failed for " + path.string()};
}

std::string read_text(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw Failure{kExitUser, "cannot read " + path.string()};
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Options shared by all subcommands.
struct Common {
  std::uint64_t seed = 0;
  int workers = 1;
  std::size_t vertex_budget = 500000;
  std::int64_t budget_ms = 0;  // 0: the subcommand's default
  std::string out;
  std::string argv;
  std::string started;

  csep_run_options options() const {
    csep_run_options o;
    csep_run_options_init(&o);
    o.seed = seed;
    o.workers = workers;
    o.vertex_budget = vertex_budget;
    o.budget_ms = budget_ms;
    return o;
  }

  json record(const std::string& command, json input, json parameters, const json& doc) const {
    json r;
    r["schema"] = 1;
    r["command"] = command;
    r["argv"] = argv;
    r["input"] = std::move(input);
    r["seed"] = seed;
    parameters["vertex_budget"] = vertex_budget;
    r["parameters"] = std::move(parameters);
    r["environment"] = {{"workers", workers}};
    r["tool_version"] = csep_version();
    r["started_at"] = started;
    r["finished_at"] = utc_now();
    r["results"] = doc.at("results");
    r["timing"] = doc.contains("timing") ? doc.at("timing") : json::object();
    return r;
  }
};

void add_common(CLI::App* sub, Common& c, bool with_budget_ms) {
  sub->add_option("--seed", c.seed, "64-bit seed for all randomness (default 0)");
  sub->add_option("--workers", c.workers, "maximum worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber);
  sub->add_option("--vertex-budget", c.vertex_budget, "cap on generated ball sizes")
      ->check(CLI::PositiveNumber);
  if (with_budget_ms) {
    sub->add_option("--budget-ms", c.budget_ms,
                    "search budget per exact cut in milliseconds (default 2000, gapcheck 10000)")
        ->check(CLI::PositiveNumber);
  }
}

int cmd_ball(const Common& c, const std::string& spec, int radius) {
  GraphHandle g;
  check(csep_graph_open(spec.c_str(), radius, c.vertex_budget, &g.h));
  json meta = take([&] {
    char* s = nullptr;
    check(csep_graph_describe(g.h, &s));
    return s;
  }());
  std::cout << "vertices=" << meta["vertices"] << " edges=" << meta["edges"]
            << " radius=" << radius << "\n";
  if (!c.out.empty()) {
    const fs::path path(c.out);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    check(csep_graph_save(g.h, path.c_str()));
    json doc = {{"results", meta}};
    write_text(path.string() + ".json",
               c.record("ball", {{"spec", spec}, {"radius", radius}}, json::object(), doc).dump(2) +
                   "\n");
  }
  return kExitOk;
}

int cmd_cut(const Common& c, const std::string& input, const std::string& spec, int radius,
            const std::string& mode) {
  GraphHandle g;
  json in;
  if (!input.empty()) {
    check(csep_graph_load(input.c_str(), &g.h));
    in = {{"path", fs::absolute(input).string()}};
  } else {
    if (spec.empty()) throw Failure{kExitUser, "cut needs --input or --group"};
    check(csep_graph_open(spec.c_str(), radius, c.vertex_budget, &g.h));
    in = {{"spec", spec}, {"radius", radius}};
  }
  const auto o = c.options();
  char* s = nullptr;
  check(csep_cut(g.h, mode.c_str(), &o, &s));
  const json doc = take(s);
  const auto& r = doc["results"];
  std::cout << "cut=" << (r["lower"].is_null() ? r["upper"] : r["lower"]) << " kind=" << r["kind"].get<std::string>();
  if (r["kind"] == "lower,upper") std::cout << " upper=" << r["upper"];
  std::cout << "\n";
  if (!c.out.empty()) {
    json params = {{"mode", mode}, {"budget_ms", c.budget_ms}};
    write_text(c.out, c.record("cut", in, params, doc).dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_profile(const Common& c, const std::string& spec, std::size_t max_n,
                const std::string& candidates) {
  const auto o = c.options();
  char* s = nullptr;
  check(csep_profile(spec.c_str(), max_n, candidates.c_str(), &o, &s));
  const json doc = take(s);
  const auto& r = doc["results"];
  std::printf("%10s %10s %10s  %s\n", "n", "cut_lower", "cut_upper", "candidate");
  for (const auto& p : r["points"]) {
    std::printf("%10zu %10zu %10zu  %s%s\n", p["n"].get<std::size_t>(),
                p["cut_lower"].get<std::size_t>(), p["cut_upper"].get<std::size_t>(),
                p["candidate"].get<std::string>().c_str(), p["exact"].get<bool>() ? "" : " (interval)");
  }
  if (!r["fit"].is_null()) {
    const auto& f = r["fit"];
    std::printf("fit: slope=%.4f intercept=%.4f r2=%.4f over n in [%zu, %zu] (%zu points)\n",
                f["slope"].get<double>(), f["intercept"].get<double>(),
                f["r_squared"].get<double>(), f["n_min"].get<std::size_t>(),
                f["n_max"].get<std::size_t>(), f["count"].get<std::size_t>());
  } else {
    std::printf("fit: fewer than 3 points\n");
  }
  for (const auto& note : r["notes"]) std::printf("note: %s\n", note.get<std::string>().c_str());
  if (!c.out.empty()) {
    const fs::path dir(c.out);
    fs::create_directories(dir);
    std::ostringstream csv, loglog;
    csv << "n,cut_lower,cut_upper,candidate\n";
    loglog << std::setprecision(10);
    for (const auto& p : r["points"]) {
      csv << p["n"] << ',' << p["cut_lower"] << ',' << p["cut_upper"] << ','
          << p["candidate"].get<std::string>() << '\n';
      const auto lower = p["cut_lower"].get<double>();
      if (lower >= 1.0) {
        loglog << std::log(p["n"].get<double>()) << ' ' << std::log(lower) << '\n';
      }
    }
    write_text(dir / "profile.csv", csv.str());
    write_text(dir / "profile_loglog.txt", loglog.str());
    json params = {{"max_n", max_n}, {"candidates", candidates}, {"budget_ms", c.budget_ms}};
    write_text(dir / "profile.json",
               c.record("profile", {{"spec", spec}}, params, doc).dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_kappa(const Common& c, const std::string& spec, const std::vector<std::uint64_t>& ns,
              bool compare) {
  Group g(spec);
  json doc;
  if (compare) {
    const auto o = c.options();
    char* s = nullptr;
    check(csep_kappa_compare(g.h, ns.data(), ns.size(), &o, &s));
    doc = take(s);
    std::printf("%10s %14s %6s %8s\n", "n", "profile_lower", "kappa", "ratio");
    for (const auto& row : doc["results"]["rows"]) {
      std::printf("%10zu %14zu %6d %8.4f\n", row["n"].get<std::size_t>(),
                  row["profile_lower"].get<std::size_t>(), row["kappa"].get<int>(),
                  row["ratio"].get<double>());
    }
    std::printf("best constant: %.4f\n", doc["results"]["best_constant"].get<double>());
  } else {
    json rows = json::array();
    for (auto n : ns) {
      int k = 0;
      check(csep_kappa(g.h, n, c.vertex_budget, &k));
      rows.push_back({{"n", n}, {"kappa", k}});
      if (ns.size() == 1) {
        std::cout << k << "\n";
      } else {
        std::cout << "n=" << n << " kappa=" << k << "\n";
      }
    }
    doc = {{"results", {{"group", spec}, {"rows", rows}}}};
  }
  if (!c.out.empty()) {
    json params = {{"n", ns}, {"compare", compare}};
    write_text(c.out, c.record("kappa", {{"spec", spec}}, params, doc).dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_growth(const Common& c, const std::string& spec, int r_max) {
  Group g(spec);
  char* s = nullptr;
  check(csep_growth(g.h, r_max, c.vertex_budget, &s));
  json res = take(s);
  const auto& sizes = res["sizes"];
  for (std::size_t r = 0; r < sizes.size(); ++r) {
    std::cout << "r=" << r << " |B_r|=" << sizes[r] << "\n";
  }
  if (!c.out.empty()) {
    json doc = {{"results", res}};
    write_text(c.out,
               c.record("growth", {{"spec", spec}}, {{"max_r", r_max}}, doc).dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_gapcheck(const Common& c, const std::string& spec, int max_r) {
  Group g(spec);
  const auto o = c.options();
  char* s = nullptr;
  check(csep_gapcheck(g.h, max_r, &o, &s));
  const json doc = take(s);
  const auto& r = doc["results"];
  std::printf("%4s %8s %6s %6s %10s %5s %7s\n", "r", "n", "lower", "upper", "threshold", "pass",
              "ratio");
  for (const auto& row : r["rows"]) {
    std::printf("%4d %8zu %6zu %6zu %10.6f %5s %7.4f\n", row["r"].get<int>(),
                row["n"].get<std::size_t>(), row["cut_lower"].get<std::size_t>(),
                row["cut_upper"].get<std::size_t>(), row["threshold"].get<double>(),
                row["pass"].get<bool>() ? "yes" : "no", row["ratio"].get<double>());
  }
  std::cout << r["passed"] << "/" << r["total"] << " pass (M=" << r["relator_bound"] << ")\n";
  if (!c.out.empty()) {
    json params = {{"max_r", max_r}, {"budget_ms", c.budget_ms}};
    write_text(c.out, c.record("gapcheck", {{"spec", spec}}, params, doc).dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_witness(const Common& c, const std::string& spec, int length, const std::string& K) {
  Group g(spec);
  char* s = nullptr;
  check(csep_witness(g.h, length, K.c_str(), c.vertex_budget, &s));
  const json doc = take(s);
  const auto& r = doc["results"];
  const auto status = r["status"].get<std::string>();
  if (status == "found") {
    const auto& w = r["witness"];
    std::cout << "witness length=" << w["length"] << " distortion="
              << w["distortion"].get<std::string>()
              << " construction=" << w["construction"].get<std::string>()
              << " ambient_radius=" << w["ambient_radius"] << "\n";
  } else {
    std::cout << "none (" << status << ")\n";
    if (!r["detail"].get<std::string>().empty()) {
      std::cout << "detail: " << r["detail"].get<std::string>() << "\n";
    }
  }
  if (!c.out.empty()) {
    json params = {{"length", length}, {"distortion", K}};
    write_text(c.out, c.record("witness", {{"spec", spec}}, params, doc).dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_bigons(const Common& c, const std::string& spec, int radius) {
  Group g(spec);
  const auto o = c.options();
  char* s = nullptr;
  check(csep_bigons(g.h, radius, &o, &s));
  const json doc = take(s);
  const auto& r = doc["results"];
  std::cout << "pairs=" << r["pairs_scanned"] << " max_fatness=" << r["max_layer_diameter"]
            << "\n";
  std::size_t shown = 0;
  for (const auto& b : r["top"]) {
    if (++shown > 10) break;
    std::cout << "  " << b["u"].get<std::string>() << " -- " << b["v"].get<std::string>()
              << " length=" << b["geodesic_length"] << " fatness=" << b["max_layer_diameter"]
              << " layer=" << b["layer"] << "\n";
  }
  if (!c.out.empty()) {
    write_text(c.out,
               c.record("bigons", {{"spec", spec}}, {{"radius", radius}}, doc).dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_bottleneck(const Common& c, const std::string& spec, int radius, int delta) {
  Group g(spec);
  const auto o = c.options();
  char* s = nullptr;
  check(csep_bottleneck(g.h, radius, delta, &o, &s));
  const json doc = take(s);
  const auto& r = doc["results"];
  std::cout << "pairs=" << r["pairs_checked"] << " violations=" << r["violation_count"]
            << (r["holds"].get<bool>() ? " (holds)" : " (fails)") << "\n";
  std::size_t shown = 0;
  for (const auto& v : r["violations"]) {
    if (++shown > 10) break;
    std::cout << "  x=" << v["x"].get<std::string>() << " y=" << v["y"].get<std::string>()
              << " midpoint=" << v["midpoint"].get<std::string>() << "\n";
  }
  if (!c.out.empty()) {
    json params = {{"radius", radius}, {"delta", delta}};
    write_text(c.out, c.record("bottleneck", {{"spec", spec}}, params, doc).dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_verify(const std::string& path) {
  char* s = nullptr;
  check(csep_verify_record(read_text(path).c_str(), &s));
  const json rep = take(s);
  std::cout << rep["command"].get<std::string>() << ": " << rep["passed"] << "/" << rep["checks"]
            << " checks passed\n";
  for (const auto& d : rep["details"]) {
    if (!d["valid"].get<bool>()) std::cout << "  invalid: " << d["item"].get<std::string>() << "\n";
  }
  return rep["ok"].get<bool>() ? kExitOk : kExitUser;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separation profiles and hyperbolicity witnesses for Cayley graphs"};
  app.set_version_flag("--version", std::string(csep_version()));
  app.require_subcommand(1);
  app.footer(
      "Group specs: zd:<d>, free:<k>, heis, lamplighter, bs:1:<n>, surface:2, pres:<path>.\n"
      "Graph specs (cut, profile): sierpinski:<L>, file:<edge list>.\n"
      "Exit codes: 0 success, 1 internal error, 2 usage, input or resource error.");

  Common c;
  for (int i = 0; i < argc; ++i) c.argv += (i ? " " : "") + std::string(argv[i]);
  c.started = utc_now();

  std::string spec, input, mode = "exact", candidates = "balls", K = "18", record;
  int radius = -1, max_r = 10, length = 16, delta = 2;
  std::size_t max_n = 1000;
  std::vector<std::uint64_t> ns;
  bool compare = false;

  auto* ball = app.add_subcommand("ball", "Write a Cayley ball as an edge list plus metadata");
  ball->add_option("--group", spec, "group spec")->required();
  ball->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  ball->add_option("--out", c.out, "edge list path; metadata goes to <path>.json");
  add_common(ball, c, false);

  auto* cut = app.add_subcommand("cut", "Minimum balanced cut of a graph or ball");
  auto* in_opt = cut->add_option("--input", input, "edge-list file");
  auto* grp_opt = cut->add_option("--group", spec, "group or graph spec");
  in_opt->excludes(grp_opt);
  cut->add_option("--radius", radius, "ball radius (required for group specs)");
  cut->add_option("--mode", mode, "brute, exact or heuristic")
      ->check(CLI::IsMember({"brute", "exact", "heuristic"}));
  cut->add_option("--out", c.out, "run record path (JSON)");
  add_common(cut, c, true);

  auto* profile = app.add_subcommand("profile", "Separation profile envelope and exponent fit");
  profile->add_option("--group", spec, "group or graph spec")->required();
  profile->add_option("--max-n", max_n)->check(CLI::PositiveNumber);
  profile->add_option("--candidates", candidates,
                      "comma list of balls, spheres-thickened, random-connected");
  profile->add_option("--out", c.out, "output directory");
  add_common(profile, c, true);
  profile->footer(
      "Writes <out>/profile.csv with columns n,cut_lower,cut_upper,candidate,\n"
      "<out>/profile.json (run record) and <out>/profile_loglog.txt with columns\n"
      "log_n log_cut (natural logarithms of n and cut_lower).");

  auto* kap = app.add_subcommand("kappa", "Inverse growth function");
  kap->add_option("--group", spec)->required();
  kap->add_option("--n", ns, "one or more sizes")->required()->delimiter(',');
  kap->add_flag("--compare", compare, "compare against the ball profile lower bounds");
  kap->add_option("--out", c.out, "run record path (JSON)");
  add_common(kap, c, true);

  auto* growth = app.add_subcommand("growth", "Ball sizes |B_0| .. |B_R|");
  growth->add_option("--group", spec)->required();
  growth->add_option("--max-r", max_r)->check(CLI::NonNegativeNumber);
  growth->add_option("--out", c.out, "run record path (JSON)");
  add_common(growth, c, false);

  auto* gap = app.add_subcommand("gapcheck", "Check cut(B_r) >= r/(400 M) for r = 1..R");
  gap->add_option("--group", spec)->required();
  gap->add_option("--max-r", max_r)->check(CLI::PositiveNumber);
  gap->add_option("--out", c.out, "run record path (JSON)");
  add_common(gap, c, true);

  auto* wit = app.add_subcommand("witness", "Search for a long cycle of bounded distortion");
  wit->add_option("--group", spec)->required();
  wit->add_option("--length", length)->check(CLI::PositiveNumber);
  wit->add_option("--distortion", K, "bound K, e.g. 18, 2 or 9/2");
  wit->add_option("--out", c.out, "run record path (JSON)");
  add_common(wit, c, false);

  auto* big = app.add_subcommand("bigons", "Fatness of geodesic bigons from the identity");
  big->add_option("--group", spec)->required();
  big->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  big->add_option("--out", c.out, "run record path (JSON)");
  add_common(big, c, false);

  auto* bot = app.add_subcommand("bottleneck", "Test the bottleneck property in a ball");
  bot->add_option("--group", spec)->required();
  bot->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  bot->add_option("--delta", delta)->check(CLI::NonNegativeNumber);
  bot->add_option("--out", c.out, "run record path (JSON)");
  add_common(bot, c, false);

  auto* ver = app.add_subcommand("verify", "Re-validate the results of a run record");
  ver->add_option("record", record, "run record JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUser;
  }

  try {
    if (c.budget_ms == 0 && !*gap) c.budget_ms = 2000;
    if (*ball) return cmd_ball(c, spec, radius);
    if (*cut) return cmd_cut(c, input, spec, radius, mode);
    if (*profile) return cmd_profile(c, spec, max_n, candidates);
    if (*kap) return cmd_kappa(c, spec, ns, compare);
    if (*growth) return cmd_growth(c, spec, max_r);
    if (*gap) {
      if (c.budget_ms == 0) c.budget_ms = 10000;
      return cmd_gapcheck(c, spec, max_r);
    }
    if (*wit) return cmd_witness(c, spec, length, K);
    if (*big) return cmd_bigons(c, spec, radius);
    if (*bot) return cmd_bottleneck(c, spec, radius, delta);
    if (*ver) return cmd_verify(record);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
