#include "dillon/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "dillon/diffanalysis.hpp"
#include "dillon/invariants.hpp"
#include "dillon/search.hpp"
#include "dillon/theory.hpp"
#include "dillon/variety.hpp"
#include "json.hpp"

namespace dillon {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct CliError : std::runtime_error {
  CliError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
  int code;
};

/// Collects artifacts and publishes them together: each file is written under
/// a temporary name and renamed only once all of them were written.
class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {}
  void add(const std::string& name, std::string content) { files_.emplace_back(name, std::move(content)); }
  std::vector<fs::path> commit() const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw CliError(kExitIo, "cannot create output directory " + dir_.string() + ": " + ec.message());
    std::vector<fs::path> tmps, finals;
    for (const auto& [name, content] : files_) {
      const fs::path final_path = dir_ / name, tmp = dir_ / (name + ".tmp");
      std::ofstream os(tmp, std::ios::binary);
      os << content;
      os.close();
      tmps.push_back(tmp);
      finals.push_back(final_path);
      if (!os) {
        for (const auto& t : tmps) fs::remove(t, ec);
        throw CliError(kExitIo, "cannot write " + final_path.string());
      }
    }
    for (std::size_t i = 0; i < tmps.size(); ++i) fs::rename(tmps[i], finals[i]);
    return finals;
  }

 private:
  fs::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

struct Common {
  std::string field = "F16";
  std::string out;
  bool force_gate = false;
};

Field make_field(const std::string& text) {
  try {
    return Field::make(parse_field_spec(text));
  } catch (const std::exception& e) {
    throw CliError(kExitBadField, "bad field spec '" + text + "': " + e.what());
  }
}

std::string field_label(const Field& f) {
  for (const char* name : {"F4", "F16", "F64", "F256"})
    if (named_field(name) == f.spec()) return name;
  std::ostringstream os;
  os << "gf2-" << f.degree() << "-" << std::hex << f.spec().modulus;
  return os.str();
}

Coeffs read_tuple(const Field& f, const std::string& text) {
  try {
    return parse_coeffs(f, text);
  } catch (const std::exception& e) {
    throw CliError(kExitBadInput, "bad tuple '" + text + "': " + e.what());
  }
}

/// Tuples from --tuple and from --input (one per line, '#' starts a comment).
std::vector<Coeffs> gather_tuples(const Field& f, const std::vector<std::string>& tuples, const std::string& input) {
  std::vector<Coeffs> out;
  for (const auto& t : tuples) out.push_back(read_tuple(f, t));
  if (!input.empty()) {
    std::ifstream is(input);
    if (!is) throw CliError(kExitIo, "cannot read input file " + input);
    std::string line;
    while (std::getline(is, line)) {
      line = line.substr(0, line.find('#'));
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.push_back(read_tuple(f, line));
    }
  }
  if (out.empty()) throw CliError(kExitUsage, "no tuple given (use --tuple or --input)");
  return out;
}

fs::path out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return ".";
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string join_cases(const std::vector<int>& cases) {
  std::string s;
  for (std::size_t i = 0; i < cases.size(); ++i) s += (i ? ";" : "") + std::to_string(cases[i]);
  return s;
}

json verify_json(const Field& f, const Coeffs& c) {
  const auto prof = diff_profile(f, c);
  return {{"field", field_label(f)},
          {"tuple", format_coeffs(f, c)},
          {"univariate", format_univariate(f, to_univariate(f, c))},
          {"is_apn", is_apn_ddt(f, c)},
          {"is_apn_equation", is_apn_equation(f, c)},
          {"differential_uniformity", prof.uniformity},
          {"is_permutation", prof.is_permutation},
          {"fingerprint_hash", fingerprint(f, c).hash_hex()}};
}

// ---- subcommands --------------------------------------------------------

struct SearchArgs {
  std::string mode = "exhaustive";
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  unsigned shards = 1;
  std::string filters = "standard";
};

int cmd_search(const Common& common, const SearchArgs& a, std::ostream& out) {
  const Field f = make_field(common.field);
  SearchJob job;
  job.field = f.spec();
  if (a.mode == "exhaustive") {
    job.mode = SearchMode::Exhaustive;
  } else if (a.mode == "random") {
    job.mode = SearchMode::Random;
    if (!a.seed) throw CliError(kExitUsage, "random mode requires --seed");
    if (a.samples == 0) throw CliError(kExitUsage, "random mode requires --samples");
  } else {
    throw CliError(kExitUsage, "unknown mode '" + a.mode + "'");
  }
  job.samples = a.samples;
  job.seed = a.seed;
  job.shards = a.shards;
  job.force_gate = common.force_gate;
  try {
    job.filters = parse_filters(a.filters);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitUsage, e.what());
  }
  const auto result = run_search(job);
  const std::string stem = "search_" + field_label(f) + "_" + a.mode;
  Artifacts art(out_dir(common.out));
  std::ostringstream hits;
  write_hits_jsonl(hits, f, result.apn_hits);
  art.add(stem + ".hits.jsonl", hits.str());
  art.add(stem + ".manifest.json", result.manifest_json() + "\n");
  art.commit();
  out << result.manifest_json() << '\n';
  return kExitOk;
}

int cmd_verify(const Common& common, const std::vector<std::string>& tuples, const std::string& input,
               std::ostream& out) {
  const Field f = make_field(common.field);
  for (const auto& c : gather_tuples(f, tuples, input)) out << verify_json(f, c).dump() << '\n';
  return kExitOk;
}

int cmd_theory(const Common& common, const std::vector<std::string>& tuples, const std::string& input,
               bool reconcile_all, std::ostream& out) {
  const Field f = make_field(common.field);
  if (reconcile_all) {
    std::uint64_t n = 1;
    for (int i = 0; i < 5; ++i) n *= f.size();
    if (f.q() > kScanGateQ && !common.force_gate)
      throw GateExceeded("reconcile enumerates " + std::to_string(n) + " tuples and allows q <= " +
                         std::to_string(kScanGateQ) + "; pass --force-gate to override");
    std::vector<std::pair<Coeffs, bool>> batch;
    batch.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      const Coeffs c = tuple_at(f, i);
      batch.emplace_back(c, is_apn_ddt(f, c));
    }
    const auto report = reconcile(f, batch, default_threads());
    out << report.to_json(f) << '\n';
    if (!common.out.empty() || std::getenv(kOutDirEnv)) {
      Artifacts art(out_dir(common.out));
      art.add("reconcile_" + field_label(f) + ".json", report.to_json(f) + "\n");
      art.commit();
    }
    return kExitOk;
  }
  for (const auto& c : gather_tuples(f, tuples, input)) out << theory_report(f, c).to_json(f) << '\n';
  return kExitOk;
}

int cmd_invariants(const Common& common, const std::vector<std::string>& tuples, const std::string& input,
                   bool ranks, std::ostream& out) {
  const Field f = make_field(common.field);
  const auto cs = gather_tuples(f, tuples, input);
  FingerprintOptions opts;
  opts.ranks = ranks;
  opts.force_gate = common.force_gate;
  if (cs.size() == 1) {
    out << fingerprint(f, cs[0], opts).to_json() << '\n';
    return kExitOk;
  }
  const auto groups = partition_by_fingerprint(f, cs, opts, default_threads());
  std::ostringstream csv;
  write_partition_csv(csv, f, groups);
  out << csv.str();
  if (!common.out.empty() || std::getenv(kOutDirEnv)) {
    Artifacts art(out_dir(common.out));
    art.add("partition_" + field_label(f) + ".csv", csv.str());
    art.commit();
  }
  return kExitOk;
}

int cmd_sympoly(const Common& common, const std::string& tuple, bool dump, std::ostream& out) {
  const Field f = make_field(common.field);
  const Coeffs c = read_tuple(f, tuple);
  json j{{"field", field_label(f)}, {"tuple", format_coeffs(f, c)}};
  try {
    const auto s = build_variety_system(f, c);
    j["checks"] = {{"g_display", s.checks.g_display},
                   {"gbar_factorization", s.checks.gbar_factorization},
                   {"a1_is_a2_z0", s.checks.a1_is_a2_z0},
                   {"a2_is_g3_squared", s.checks.a2_is_g3_squared},
                   {"a0_is_g1_g2", s.checks.a0_is_g1_g2}};
    j["g1"] = s.g1.to_string();
    j["g2"] = s.g2.to_string();
    j["g3"] = s.g3.to_string();
    j["gcd_a2_a0"] = gcd_bivariate(s.a2, s.a0).to_string();
    if (dump) {
      Artifacts art(out_dir(common.out));
      const std::string stem = "sympoly_" + field_label(f) + "_" + std::to_string(tuple_index(f, c));
      art.add(stem + ".G.txt", s.G.dump());
      art.add(stem + ".Gbar.txt", s.Gbar.dump());
      art.add(stem + ".a2.txt", s.a2.dump());
      art.add(stem + ".a0.txt", s.a0.dump());
      art.commit();
    }
  } catch (const DegenerateSystem& e) {
    j["degenerate"] = e.condition();
  }
  const auto rem = classify_gcd_regime(f, c, common.force_gate);
  j["gcd_regime_class"] = to_string(rem.cls);
  const auto res = lowest_part_resultant_check(f, c);
  j["resultant"] = {{"lowest_parts_match", res.lowest_parts_match},
                    {"value", res.resultant.to_string()},
                    {"identity_holds", res.identity_holds}};
  if (f.q() <= kScanGateQ || common.force_gate) {
    const auto scan = rational_point_scan(f, {variety_F1(f, c), variety_F2(f, c)}, kAllPlanes, true);
    j["scan"] = {{"fixed_points", scan.fixed_points}, {"on_system", scan.on_system}, {"off_plane", scan.off_plane}};
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct Representative {
  const char* field;
  const char* tuple;
};

constexpr Representative kRepresentatives[] = {
    {"F4", "a,0,0,0,a"},
    {"F16", "a,0,0,a,0"},
    {"F64", "a^23,a^23,a^47,a^25,a^29"},
    {"F64", "a^35,a^46,a^6,a^20,a^31"},
    {"F64", "a^37,0,a^41,a^28,0"},
    {"F256", "a^210,a^34,a^125,a^170,a^207"},
    {"F256", "a^25,a^51,a^34,a^68,a^17"},
};

int cmd_repro(const Common& common, bool census_q4, std::ostream& out) {
  Artifacts art(out_dir(common.out));
  json manifest{{"tool_version", DILLON_VERSION}, {"files", json::array()}};

  for (const char* name : {"F4", "F16", "F64", "F256"}) {
    const Field f = Field::make(named_field(name));
    std::ostringstream csv;
    csv << "field,A,B,C,D,E,polynomial,is_permutation,fingerprint_hash,matched_cases,is_apn\n";
    for (const auto& r : kRepresentatives) {
      if (std::string(r.field) != name) continue;
      const Coeffs c = parse_coeffs(f, r.tuple);
      csv << name;
      for (const auto& e : c.as_array()) csv << ',' << f.format(e);
      csv << ',' << format_univariate(f, to_univariate(f, c)) << ',' << (is_permutation(f, c) ? "true" : "false")
          << ',' << fingerprint(f, c).hash_hex() << ',' << join_cases(match_summary_cases(f, c)) << ','
          << (is_apn_ddt(f, c) ? "true" : "false") << '\n';
    }
    const std::string file = std::string("ccz_") + name + ".csv";
    art.add(file, csv.str());
    manifest["files"].push_back(file);
  }

  const Field f4 = Field::make(named_field("F4"));
  const auto census = gcd_regime_census(f4, true, default_threads(), true);
  std::ostringstream rows;
  rows << "A,B,C,D,E,class,is_apn\n";
  for (const auto& r : census.rows) {
    for (const auto& e : r.c.as_array()) rows << f4.format(e) << ',';
    rows << to_string(r.cls) << ',' << (r.apn ? "true" : "false") << '\n';
  }
  art.add("gcd_regime_census_F4.csv", rows.str());
  art.add("gcd_regime_census_F4.json", census.to_json() + "\n");
  manifest["files"].push_back("gcd_regime_census_F4.csv");
  manifest["files"].push_back("gcd_regime_census_F4.json");
  if (census_q4) {
    const Field f16 = Field::make(named_field("F16"));
    art.add("gcd_regime_census_F16.json", gcd_regime_census(f16, true, default_threads()).to_json() + "\n");
    manifest["files"].push_back("gcd_regime_census_F16.json");
  }
  art.add("manifest.json", manifest.dump(2) + "\n");
  for (const auto& p : art.commit()) out << p.string() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dillon hexanomial APN toolkit", "dillon"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DILLON_VERSION);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--field", common.field, "Field: F4, F16, F64, F256 or gf2:<2m>:<modulus-hex>")
        ->capture_default_str();
    sub->add_option("--out", common.out, std::string("Output directory (default: $") + kOutDirEnv + " or .)");
    sub->add_flag("--force-gate", common.force_gate, "Run computations above the size gates");
  };

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Exhaustive or seeded random APN search");
  add_common(search);
  search->add_option("--mode", sa.mode, "exhaustive or random")->capture_default_str();
  search->add_option("--samples", sa.samples, "Number of random samples");
  search->add_option("--seed", sa.seed, "Seed for random mode");
  search->add_option("--shards", sa.shards, "Parallel shards")->capture_default_str();
  search->add_option("--filters", sa.filters,
                     "Comma list: none, a-nonzero, no-c1c2, standard, prioritized, cases=<i;j>")
      ->capture_default_str();

  std::vector<std::string> tuples;
  std::string input;
  auto add_tuples = [&](CLI::App* sub) {
    sub->add_option("--tuple", tuples, "Coefficients A,B,C,D,E in a^k or hex notation");
    sub->add_option("--input", input, "File with one tuple per line");
  };

  auto* verify = app.add_subcommand("verify", "APN, permutation and fingerprint of tuples");
  add_common(verify);
  add_tuples(verify);

  bool reconcile_all = false;
  auto* theory = app.add_subcommand("theory", "Theory predicates and verdicts");
  add_common(theory);
  add_tuples(theory);
  theory->add_flag("--reconcile", reconcile_all, "Reconcile predictions with exhaustive data for the field");

  bool ranks = false;
  auto* inv = app.add_subcommand("invariants", "CCZ-invariant fingerprints");
  add_common(inv);
  add_tuples(inv);
  inv->add_flag("--ranks", ranks, "Include Gamma and Delta ranks");

  std::string tuple;
  bool dump = false;
  auto* sym = app.add_subcommand("sympoly", "Variety system, gcd and resultant checks for one tuple");
  add_common(sym);
  sym->add_option("--tuple", tuple, "Coefficients A,B,C,D,E")->required();
  sym->add_flag("--dump", dump, "Write polynomial dumps to the output directory");

  bool census_q4 = false;
  auto* repro = app.add_subcommand("repro-appendix", "Regenerate the representative tables and the q=2 census");
  add_common(repro);
  repro->add_flag("--census-q4", census_q4, "Also run the q=4 census (minutes)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << DILLON_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*search) return cmd_search(common, sa, out);
    if (*verify) return cmd_verify(common, tuples, input, out);
    if (*theory) return cmd_theory(common, tuples, input, reconcile_all, out);
    if (*inv) return cmd_invariants(common, tuples, input, ranks, out);
    if (*sym) return cmd_sympoly(common, tuple, dump, out);
    if (*repro) return cmd_repro(common, census_q4, out);
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const GateExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitGate;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace dillon
