#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pfib/horikawa.hpp"
#include "pfib/parse.hpp"

using namespace pfib;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::string model_path;
  std::string family;
  int param = 1;
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;  // 0 = environment default
  bool rationals = false;
  int samples = 50;
  std::string output;
};

FieldSpec field_of(const RunConfig& c) {
  if (c.rationals) {
    if (c.prime != 0) throw error("--rationals and --prime are mutually exclusive");
    return FieldSpec::rationals();
  }
  std::uint64_t p = c.prime;
  if (p == 0) {
    if (const char* env = std::getenv("PFIB_PRIME")) {
      try {
        p = std::stoull(env);
      } catch (const std::exception&) {
        throw error("PFIB_PRIME is not a valid integer: " + std::string(env));
      }
    } else {
      p = kDefaultPrime;
    }
  }
  return FieldSpec::prime(p);
}

PfaffianModel build_model(const RunConfig& c, const FieldSpec& f) {
  if (!c.model_path.empty() && !c.family.empty())
    throw error("pass exactly one of --model and --family");
  if (!c.model_path.empty()) {
    std::ifstream in(c.model_path);
    if (!in) throw error("cannot open model file " + c.model_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return read_model(ss.str(), f);
  }
  if (c.param < 1) throw error("family parameter must be >= 1");
  if (c.family == "A") {
    auto q = random_quadrics(c.seed, f);
    PfaffianModel m = family_A(c.param, q[0], q[1], q[2]);
    m.seed = c.seed;
    return m;
  }
  if (c.family == "B") {
    // the consistent (0,2) quadric assignment; the stated one is inhomogeneous
    auto q = random_sections_for(c.seed, family_B_consistent_q_bidegrees(),
                                 family_B_weights(c.param), f);
    PfaffianModel m = family_B(c.param, q[0], q[1], q[2]);
    m.seed = c.seed;
    return m;
  }
  if (c.family == "C") {
    auto q = random_sections_for(c.seed, family_C_stated_q_bidegrees(),
                                 family_C_weights(c.param), f);
    PfaffianModel m = family_C(c.param, q[0], q[1], q[2]);
    m.seed = c.seed;
    return m;
  }
  throw error("no model source: pass --model or --family A|B|C");
}

ordered_json model_json(const PfaffianModel& m, const FieldSpec& f) {
  ordered_json j;
  j["label"] = m.label;
  j["weights"] = m.weights.a;
  if (m.seed) j["seed"] = *m.seed;
  j["field"] = f.describe();
  ordered_json entries = ordered_json::array();
  for (int i = 0; i < 5; ++i)
    for (int k = i + 1; k < 5; ++k)
      entries.push_back({{"i", i}, {"j", k}, {"value", m.entry(i, k).str()}});
  j["entries"] = entries;
  return j;
}

ordered_json invariants_json(const FibrationInvariants& v) {
  return ordered_json{{"p_g", v.p_g}, {"q", v.q},       {"chi_O", v.chi_O},
                      {"chi_f", v.chi_f}, {"K2", v.K2}, {"e_f", v.e_f}};
}

ordered_json fibers_json(const std::vector<FiberClassification>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows)
    arr.push_back({{"point", r.point.str()},
                   {"quadrics", r.quadric_dim},
                   {"cubics", r.cubic_dim},
                   {"coker_mu", r.coker_dim},
                   {"verdict", verdict_name(r.verdict)}});
  return arr;
}

ordered_json sheaf_json(const SheafTorsion& s) {
  ordered_json j;
  ordered_json supp = ordered_json::array();
  for (const auto& c : s.support) supp.push_back({{"point", c.point.str()}, {"length", c.length}});
  j["support"] = supp;
  j["total_length"] = s.total_length;
  j["nontorsion"] = s.nontorsion;
  j["charts_consistent"] = s.charts_consistent;
  j["unresolved"] = s.unresolved;
  return j;
}

ordered_json horikawa_json(const HorikawaReport& h) {
  ordered_json j;
  j["F"] = sheaf_json(h.F);
  j["all_even"] = h.all_even;
  ordered_json hv = ordered_json::array();
  for (const auto& [p, v] : h.H_values) hv.push_back({{"point", p.str()}, {"H", v}});
  j["H"] = hv;
  return j;
}

ordered_json koszul_json(const KoszulReport& k) {
  ordered_json j;
  j["K03_zero"] = k.K03_zero;
  j["K03_total_length"] = k.K03_total_length;
  j["K12"] = sheaf_json(k.K12);
  return j;
}

ordered_json slope_json(const SlopeReport& s) {
  return ordered_json{{"H_total", s.H_total},
                      {"slope_holds", s.slope_holds},
                      {"konno_holds", s.konno_holds},
                      {"evenness_holds", s.evenness_holds},
                      {"supports_match", s.supports_match},
                      {"pass", s.pass}};
}

void emit(const RunConfig& c, const ordered_json& report) {
  if (c.output.empty()) return;
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw error("cannot write " + c.output);
  out << report.dump(2) << "\n";
}

void print_invariants(const FibrationInvariants& v) {
  std::cout << "invariants: p_g=" << v.p_g << " q=" << v.q << " chi_O=" << v.chi_O
            << " chi_f=" << v.chi_f << " K2=" << v.K2 << " e_f=" << v.e_f << "\n";
}

void print_sheaf(const char* name, const SheafTorsion& s) {
  std::cout << name << ": total length " << s.total_length;
  for (const auto& c : s.support) std::cout << "  " << c.point.str() << ":" << c.length;
  if (s.nontorsion) std::cout << "  [nontorsion!]";
  if (!s.charts_consistent) std::cout << "  [chart mismatch!]";
  for (const auto& u : s.unresolved) std::cout << "  [unresolved " << u << "]";
  std::cout << "\n";
}

// Returns the process exit code.
int run(const std::string& command, const RunConfig& c) {
  FieldSpec f;
  PfaffianModel m;
  try {
    f = field_of(c);
    m = build_model(c, f);
  } catch (const error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  ordered_json report;
  report["tool_version"] = kVersion;
  report["command"] = command;
  report["model"] = model_json(m, f);

  HomogeneityReport hom = check_homogeneity(m);
  ordered_json hj;
  hj["consistent"] = hom.consistent;
  ordered_json issues = ordered_json::array();
  for (const auto& issue : hom.issues)
    issues.push_back({{"name", issue.name}, {"detail", issue.detail}});
  hj["issues"] = issues;
  if (hom.consistent) {
    ordered_json degs = ordered_json::array();
    for (const auto& d : hom.pfaffian_bidegrees) degs.push_back(d.str());
    hj["pfaffian_bidegrees"] = degs;
  }
  report["homogeneity"] = hj;

  std::cout << "model: " << (m.label.empty() ? "(unlabeled)" : m.label) << ", field "
            << f.describe() << "\n";
  if (!hom.consistent) {
    std::cout << "inhomogeneous model, " << hom.issues.size() << " issue(s):\n";
    for (const auto& issue : hom.issues)
      std::cout << "  " << issue.name << ": " << issue.detail << "\n";
    emit(c, report);
    return 2;
  }

  bool fail = false;
  if (command == "invariants" || command == "verify") {
    FibrationInvariants v = invariants(m);
    report["invariants"] = invariants_json(v);
    print_invariants(v);
  }
  if (command == "fibers" || command == "verify") {
    std::vector<BasePoint> pts{BasePoint::one_zero(f), BasePoint::zero_one(f)};
    for (const BasePoint& p : random_base_points(c.seed, c.samples, f)) pts.push_back(p);
    std::vector<FiberClassification> rows = scan(m, pts);
    report["fibers"] = fibers_json(rows);
    int trigonal = 0, anomalous = 0;
    for (const auto& r : rows) {
      if (r.verdict == FiberVerdict::trigonal) ++trigonal;
      if (r.verdict == FiberVerdict::anomalous) ++anomalous;
    }
    std::cout << "fibers: " << rows.size() << " scanned, " << trigonal << " trigonal, "
              << anomalous << " anomalous\n";
    if (command == "fibers")
      for (const auto& r : rows)
        if (r.verdict != FiberVerdict::nontrigonal)
          std::cout << "  " << r.point.str() << ": quadrics " << r.quadric_dim << ", cubics "
                    << r.cubic_dim << ", coker " << r.coker_dim << " -> "
                    << verdict_name(r.verdict) << "\n";
    if (anomalous > 0) fail = true;
  }
  if (command == "horikawa") {
    HorikawaReport h = horikawa(m);
    report["horikawa"] = horikawa_json(h);
    print_sheaf("F", h.F);
    for (const auto& [p, v] : h.H_values) std::cout << "H(" << p.str() << ") = " << v << "\n";
    if (!h.all_even || h.F.nontorsion || !h.F.charts_consistent || !h.F.unresolved.empty())
      fail = true;
  }
  if (command == "verify") {
    SlopeReport s = verify_slope(m);
    report["horikawa"] = horikawa_json(s.hor);
    report["koszul"] = koszul_json(s.koszul);
    report["slope"] = slope_json(s);
    print_sheaf("F", s.hor.F);
    print_sheaf("K12", s.koszul.K12);
    std::cout << "K03 zero: " << (s.koszul.K03_zero ? "yes" : "NO") << "\n";
    std::cout << "slope: K2 = 4*chi_f + " << s.H_total << " "
              << (s.slope_holds ? "holds" : "FAILS") << "; Konno cross-check "
              << (s.konno_holds ? "holds" : "FAILS") << "\n";
    std::cout << "verdict: " << (s.pass ? "PASS" : "FAIL") << "\n";
    if (!s.pass) fail = true;
  }

  emit(c, report);
  return fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for genus-5 Pfaffian surface fibrations"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  std::string command;
  for (const char* name : {"invariants", "fibers", "horikawa", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--model", cfg.model_path, "model file path");
    sub->add_option("--family", cfg.family, "builtin family A|B|C")
        ->check(CLI::IsMember({"A", "B", "C"}));
    sub->add_option("--n,--param", cfg.param, "family parameter (n, a or d)");
    sub->add_option("--seed", cfg.seed, "seed for the builtin family sections");
    sub->add_option("--prime", cfg.prime, "prime for F_p mode (default: PFIB_PRIME env or 2^31-1)");
    sub->add_flag("--rationals", cfg.rationals, "exact rational coefficients");
    sub->add_option("--samples", cfg.samples, "random fibers to scan")->check(CLI::NonNegativeNumber);
    sub->add_option("--output", cfg.output, "write a JSON report here");
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // CLI misuse is a config error
  }

  try {
    return run(command, cfg);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;  // math-level failure on a well-formed configuration
  }
}
