#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "birsym/abelian.hpp"
#include "birsym/config.hpp"
#include "birsym/congruence.hpp"
#include "birsym/quotients.hpp"
#include "birsym/structmaps.hpp"
#include "cache.hpp"

namespace {

using namespace birsym;
using nlohmann::json;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kBound = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Json, Csv };

struct RunConfig {
  Format format = Format::Text;
  unsigned threads = 1;
  std::string cache_dir;
  bool no_cache = false;
  bool timing = false;
  Limits limits{};
};

struct DimsArgs {
  std::string group;
  int n = 2;
  std::string variant = "plain";
  std::string method = "brute";
  bool torsion = false;
  bool grading = false;
};

struct TableArgs {
  std::string family;
  std::string range;
  std::vector<std::string> groups;
  std::vector<std::int64_t> primes;
  bool torsion = false;
  bool no_grading = false;
};

struct VerifyArgs {
  std::string check;
  std::string group;
  std::string level;
  int n = 2;
};

struct LevelArgs {
  std::string level;
};

std::int64_t parse_int(std::string_view s, const char* what) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw UsageError(std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

Level parse_level(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("level must be N,M (got '" + s + "')");
  try {
    return make_level(parse_int(std::string_view(s).substr(0, comma), "level"),
                      parse_int(std::string_view(s).substr(comma + 1), "level"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

GroupDescriptor parse_group_arg(const std::string& s, const Limits& limits) {
  try {
    return parse_group(s, limits);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string torsion_text(const DimensionReport& r) {
  if (!r.torsion_computed) return "not computed";
  if (r.torsion.empty()) return "free";
  std::string out;
  for (std::size_t i = 0; i < r.torsion.size();) {
    std::size_t j = i;
    while (j < r.torsion.size() && r.torsion[j] == r.torsion[i]) ++j;
    if (!out.empty()) out += " x ";
    out += "(Z/" + std::to_string(r.torsion[i]) + ")";
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string torsion_csv(const DimensionReport& r) {
  if (!r.torsion_computed) return "NA";
  std::string out;
  for (auto d : r.torsion) out += (out.empty() ? "" : " ") + std::to_string(d);
  return out;
}

// Plain M_2 by formula is the minus dimension plus the difference formula,
// where one is known; no torsion statement exists for it.
DimensionReport formula_report(const GroupDescriptor& group, int n, Variant variant) {
  if (n != 2 || variant == Variant::Plus) throw UsageError("closed forms exist only for n = 2, variants minus and plain");
  auto r = closed_form(group);
  if (variant == Variant::Minus) return r;
  mpq_class diff;
  try {
    diff = difference_formula(group);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (diff.get_den() != 1) throw std::logic_error("difference formula is not an integer");
  r.variant = Variant::Plain;
  r.dim += diff.get_num().get_si();
  r.torsion_computed = false;
  r.torsion.clear();
  return r;
}

DimensionReport brute_report(const GroupDescriptor& group, int n, Variant variant, bool torsion, bool grading,
                             const RunConfig& cfg) {
  const cli::ReportCache cache(cfg.no_cache ? std::filesystem::path{}
                               : cfg.cache_dir.empty() ? cli::default_cache_dir()
                                                       : std::filesystem::path(cfg.cache_dir));
  const auto& f = group.factors();
  const bool graded = grading && n == 2 && variant != Variant::Plus && f.size() == 2 && f[0] >= 3 && f[1] % f[0] == 0;
  const cli::CacheKey key{group.literal(), n, variant, Method::Brute, torsion, graded};
  if (auto hit = cache.load(key)) return *hit;
  DimensionOptions o;
  o.torsion = torsion;
  o.grading = graded;
  o.limits = cfg.limits;
  auto r = dimension(group, n, variant, o);
  cache.store(key, r);
  return r;
}

bool reports_agree(const DimensionReport& a, const DimensionReport& b) {
  if (a.dim != b.dim) return false;
  return !(a.torsion_computed && b.torsion_computed) || a.torsion == b.torsion;
}

json report_json(DimensionReport r, const RunConfig& cfg) {
  if (!cfg.timing) r.ms = 0;
  return r.to_json();
}

// Runs fn(i) for i in [0, count) on up to `threads` workers; results land by
// index so output order does not depend on scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

int cmd_dims(const DimsArgs& a, const RunConfig& cfg) {
  const auto group = parse_group_arg(a.group, cfg.limits);
  if (a.n < 1) throw UsageError("--n must be at least 1");
  Variant variant;
  try {
    variant = parse_variant(a.variant);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<DimensionReport> reports;
  if (a.method == "brute" || a.method == "both")
    reports.push_back(brute_report(group, a.n, variant, a.torsion, a.grading, cfg));
  if (a.method == "formula" || a.method == "both") reports.push_back(formula_report(group, a.n, variant));
  const bool agree = reports.size() < 2 || reports_agree(reports[0], reports[1]);

  if (cfg.format == Format::Json) {
    json j;
    j["reports"] = json::array();
    for (const auto& r : reports) j["reports"].push_back(report_json(r, cfg));
    if (reports.size() == 2) j["agree"] = agree;
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    std::cout << "group,n,variant,method,dim,torsion,generators,ms\n";
    for (const auto& r : reports) {
      std::cout << r.group << ',' << r.n << ',' << to_string(r.variant) << ',' << to_string(r.method) << ','
                << r.dim << ',' << torsion_csv(r) << ',' << r.generators << ',' << (cfg.timing ? r.ms : 0.0) << "\n";
    }
  } else {
    for (const auto& r : reports) {
      std::cout << "G=" << r.group << " n=" << r.n << " " << to_string(r.variant) << " [" << to_string(r.method)
                << "]: dim " << r.dim << ", torsion " << torsion_text(r);
      if (r.method == Method::Brute) std::cout << ", " << r.generators << " generators";
      if (cfg.timing) std::cout << ", " << r.ms << " ms";
      std::cout << "\n";
    }
    if (reports.size() == 2) std::cout << (agree ? "methods agree" : "methods DISAGREE") << "\n";
  }
  return agree ? kOk : kFailed;
}

// Reference bi-cyclic rows.
const std::vector<std::string> kBicyclicRows = {"2x2", "2x4",  "2x6", "2x8",  "2x10", "2x16", "3x6", "3x3",
                                                "3x9", "3x27", "4x8", "4x16", "4x32", "5x25", "6x36"};

std::vector<std::string> table_groups(const TableArgs& a) {
  std::vector<std::string> groups;
  if (a.family == "cyclic") {
    std::int64_t lo = 2, hi = 19;
    if (!a.range.empty()) {
      const auto dots = a.range.find("..");
      if (dots == std::string::npos) throw UsageError("--range must be LO..HI");
      lo = parse_int(std::string_view(a.range).substr(0, dots), "range");
      hi = parse_int(std::string_view(a.range).substr(dots + 2), "range");
    }
    if (lo < 1 || hi < lo) throw UsageError("empty or invalid range");
    for (auto N = lo; N <= hi; ++N) groups.push_back(std::to_string(N));
  } else if (a.family == "bicyclic") {
    groups = a.groups.empty() ? kBicyclicRows : a.groups;
  } else if (a.family == "pxp") {
    const auto primes = a.primes.empty() ? std::vector<std::int64_t>{5, 7} : a.primes;
    for (auto p : primes) {
      if (p < 2 || prime_divisors(p) != std::vector<std::int64_t>{p}) throw UsageError(std::to_string(p) + " is not prime");
      groups.push_back(std::to_string(p) + "x" + std::to_string(p));
    }
  } else {
    throw UsageError("unknown family '" + a.family + "' (cyclic|bicyclic|pxp)");
  }
  return groups;
}

struct TableRow {
  DimensionReport plain, minus;
};

int cmd_table(const TableArgs& a, const RunConfig& cfg) {
  const auto names = table_groups(a);
  std::vector<GroupDescriptor> groups;
  for (const auto& s : names) groups.push_back(parse_group_arg(s, cfg.limits));
  const bool grading = !a.no_grading;
  const auto rows = parallel_map<TableRow>(groups.size(), cfg.threads, [&](std::size_t i) {
    return TableRow{brute_report(groups[i], 2, Variant::Plain, false, grading, cfg),
                    brute_report(groups[i], 2, Variant::Minus, a.torsion, grading, cfg)};
  });

  if (cfg.format == Format::Json) {
    json j = json::array();
    for (const auto& r : rows) {
      json row{{"group", r.plain.group}, {"d", r.plain.dim}, {"d_minus", r.minus.dim}};
      if (a.torsion) row["torsion_minus"] = r.minus.torsion;
      if (cfg.timing) row["ms"] = r.plain.ms + r.minus.ms;
      j.push_back(row);
    }
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    std::cout << "group,d,d_minus" << (a.torsion ? ",torsion_minus" : "") << (cfg.timing ? ",ms" : "") << "\n";
    for (const auto& r : rows) {
      std::cout << r.plain.group << ',' << r.plain.dim << ',' << r.minus.dim;
      if (a.torsion) std::cout << ',' << torsion_csv(r.minus);
      if (cfg.timing) std::cout << ',' << r.plain.ms + r.minus.ms;
      std::cout << "\n";
    }
  } else {
    std::cout << "group      d      d^-" << (a.torsion ? "    torsion(d^-)" : "") << "\n";
    for (const auto& r : rows) {
      std::ostringstream line;
      line << r.plain.group;
      std::string s = line.str();
      s.resize(std::max<std::size_t>(s.size(), 8), ' ');
      std::cout << s << ' ' << std::setw(6) << r.plain.dim << ' ' << std::setw(8) << r.minus.dim;
      if (a.torsion) std::cout << "    " << torsion_text(r.minus);
      if (cfg.timing) std::cout << "    " << r.plain.ms + r.minus.ms << " ms";
      std::cout << "\n";
    }
  }
  return kOk;
}

std::vector<CheckResult> formula_checks(const GroupDescriptor& group, const RunConfig& cfg) {
  std::vector<CheckResult> out;
  const auto brute = brute_report(group, 2, Variant::Minus, true, false, cfg);
  const auto formula = closed_form(group);
  CheckResult c;
  c.check = "formula.minus";
  c.group = group.literal();
  c.n = 2;
  c.pass = reports_agree(brute, formula);
  c.lhs = json{{"dim", formula.dim}, {"torsion", formula.torsion}};
  c.rhs = json{{"dim", brute.dim}, {"torsion", brute.torsion}};
  out.push_back(c);
  mpq_class diff;
  try {
    diff = difference_formula(group);
  } catch (const std::invalid_argument&) {
    return out;
  }
  const auto plain = brute_report(group, 2, Variant::Plain, false, false, cfg);
  CheckResult d;
  d.check = "formula.difference";
  d.group = group.literal();
  d.n = 2;
  d.pass = diff == plain.dim - brute.dim;
  d.lhs = diff.get_str();
  d.rhs = plain.dim - brute.dim;
  out.push_back(d);
  return out;
}

std::vector<CheckResult> grading_checks(const GroupDescriptor& group, const RunConfig& cfg) {
  std::vector<CheckResult> out;
  try {
    (void)bicyclic_level(group);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("grading check needs C_N x C_MN with N >= 3: ") + e.what());
  }
  if (group.factors()[0] < 3) throw UsageError("grading check needs N >= 3");
  for (auto v : {Variant::Plain, Variant::Minus}) {
    const auto full = brute_report(group, 2, v, false, false, cfg);
    const auto graded = brute_report(group, 2, v, false, true, cfg);
    CheckResult c;
    c.check = std::string("grading.") + std::string(to_string(v));
    c.group = group.literal();
    c.n = 2;
    c.pass = full.dim == graded.dim;
    c.lhs = full.dim;
    c.rhs = graded.dim;
    out.push_back(c);
  }
  return out;
}

std::vector<CheckResult> filter_prefix(std::vector<CheckResult> checks, std::vector<std::string> prefixes) {
  std::erase_if(checks, [&](const CheckResult& c) {
    return std::none_of(prefixes.begin(), prefixes.end(), [&](const auto& p) { return c.check.starts_with(p); });
  });
  return checks;
}

int cmd_verify(const VerifyArgs& a, const RunConfig& cfg) {
  static const std::vector<std::string> kGroupChecks = {"comult", "kernel", "grading", "delta", "formulas"};
  static const std::vector<std::string> kLevelChecks = {"manin", "cusps", "iso"};
  const bool by_group = std::find(kGroupChecks.begin(), kGroupChecks.end(), a.check) != kGroupChecks.end();
  const bool by_level = std::find(kLevelChecks.begin(), kLevelChecks.end(), a.check) != kLevelChecks.end();
  if (!by_group && !by_level) throw UsageError("unknown check '" + a.check + "'");
  if (by_group && a.group.empty()) throw UsageError("--check " + a.check + " needs --group");
  if (by_level && a.level.empty()) throw UsageError("--check " + a.check + " needs --level N,M");

  std::vector<CheckResult> checks;
  if (by_group) {
    const auto group = parse_group_arg(a.group, cfg.limits);
    if (a.n < 1) throw UsageError("--n must be at least 1");
    if (a.check == "comult") {
      if (a.n < 2) throw UsageError("comult check needs n >= 2");
      checks = verify_comult(group, a.n, cfg.limits);
    } else if (a.check == "kernel") {
      if (a.n < 2) throw UsageError("kernel check needs n >= 2");
      checks = verify_kernel_iso(group, a.n, cfg.limits);
    } else if (a.check == "delta") {
      if (a.n < 2) throw UsageError("delta check needs n >= 2");
      checks = {verify_delta(group, a.n, cfg.limits)};
    } else if (a.check == "grading") {
      checks = grading_checks(group, cfg);
    } else {
      checks = formula_checks(group, cfg);
    }
  } else {
    const auto level = parse_level(a.level);
    if (a.check == "iso") {
      checks = iso_check(level, cfg.limits);
    } else if (a.check == "cusps") {
      checks = filter_prefix(verify_level(level, cfg.limits), {"cosets.", "cusps."});
    } else {
      checks = filter_prefix(verify_level(level, cfg.limits), {"manin.", "level2."});
    }
  }

  const bool all = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  if (cfg.format == Format::Json) {
    json j;
    j["check"] = a.check;
    j["pass"] = all;
    j["results"] = json::array();
    for (const auto& c : checks) j["results"].push_back(c.to_json());
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    std::cout << "check,target,n,status,lhs,rhs\n";
    for (const auto& c : checks) {
      std::cout << c.check << ',' << c.group << ',' << c.n << ',' << (c.pass ? "pass" : "fail") << ",\""
                << c.lhs.dump() << "\",\"" << c.rhs.dump() << "\"\n";
    }
  } else {
    for (const auto& c : checks) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.check << " " << c.group;
      if (c.n) std::cout << " n=" << c.n;
      if (!c.lhs.is_null() || !c.rhs.is_null()) std::cout << " (" << c.lhs.dump() << " vs " << c.rhs.dump() << ")";
      if (c.counterexample) std::cout << " counterexample: " << *c.counterexample;
      std::cout << "\n";
    }
    std::cout << (all ? "all checks pass" : "verification FAILED") << "\n";
  }
  return all ? kOk : kFailed;
}

int cmd_level(const LevelArgs& a, const RunConfig& cfg) {
  const auto inv = level_invariants(parse_level(a.level), cfg.limits);
  const auto j = inv.to_json();
  if (cfg.format == Format::Json) {
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    std::cout << "N,M,index,cusps,genus,fixed_cusps\n";
    std::cout << j["N"] << ',' << j["M"] << ',' << j["index"] << ',' << j["cusps"] << ','
              << (j["genus"].is_null() ? "NA" : j["genus"].dump()) << ','
              << (j["fixed_cusps"].is_null() ? "NA" : j["fixed_cusps"].dump()) << "\n";
  } else {
    std::cout << level_name(inv.level) << ": index " << inv.index << ", cusps " << inv.cusps;
    if (inv.genus) std::cout << ", genus " << *inv.genus;
    if (inv.fixed_cusps) std::cout << ", fixed cusps " << *inv.fixed_cusps;
    std::cout << "\n";
  }
  return kOk;
}

int cmd_cosets(const LevelArgs& a, const RunConfig& cfg) {
  const auto level = parse_level(a.level);
  const auto cosets = enumerate_cosets(level, cfg.limits);
  if (cfg.format == Format::Json) {
    json j = json::array();
    for (const auto& s : cosets) j.push_back({s.a, s.b, s.c, s.d});
    std::cout << j.dump() << "\n";
  } else {
    if (cfg.format == Format::Csv) std::cout << "a,b,c,d\n";
    for (const auto& s : cosets) {
      if (cfg.format == Format::Csv)
        std::cout << s.a << ',' << s.b << ',' << s.c << ',' << s.d << "\n";
      else
        std::cout << "(" << s.a << " " << s.b << "; " << s.c << " " << s.d << ")\n";
    }
  }
  return kOk;
}

int report_error(const RunConfig& cfg, const char* kind, const std::string& message, int code) {
  if (cfg.format == Format::Json) {
    std::cout << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump(2) << "\n";
  } else {
    std::cerr << "birsym: " << kind << " error: " << message << "\n";
  }
  return code;
}

constexpr const char* kFooter = R"(CSV columns:
  dims    group,n,variant,method,dim,torsion,generators,ms
  table   group,d,d_minus[,torsion_minus][,ms]
  verify  check,target,n,status,lhs,rhs
  level   N,M,index,cusps,genus,fixed_cusps
  cosets  a,b,c,d
torsion lists elementary divisors > 1 separated by spaces; NA when not computed.
ms is 0 unless --timing is given.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 resource bound.
Cache directory: --cache-dir, else $BIRSYM_CACHE_DIR, else $XDG_CACHE_HOME/birsym or ~/.cache/birsym.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbol groups of finite abelian groups: dimensions, torsion, structure checks, and the "
               "congruence-subgroup side."};
  app.footer(kFooter);
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--threads", cfg.threads, "Worker threads for table rows")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cfg.cache_dir, "Cache directory");
  app.add_flag("--no-cache", cfg.no_cache, "Neither read nor write the cache");
  app.add_flag("--timing", cfg.timing, "Report wall-clock milliseconds");
  app.add_option("--max-order", cfg.limits.max_group_order, "Largest accepted |G|")->check(CLI::PositiveNumber);
  app.add_option("--max-enumeration", cfg.limits.max_enumeration, "Bound on |G|^n")->check(CLI::PositiveNumber);
  app.add_option("--snf-max-cols", cfg.limits.snf_max_cols, "Largest SNF column count")->check(CLI::PositiveNumber);
  app.add_option("--snf-max-rows", cfg.limits.snf_max_rows, "Largest SNF row count")->check(CLI::PositiveNumber);

  DimsArgs dims;
  auto* sc_dims = app.add_subcommand("dims", "Dimension (and torsion) of one symbol group");
  sc_dims->add_option("--group", dims.group, "Group literal, e.g. 3x9")->required();
  sc_dims->add_option("--n", dims.n, "Symbol length");
  sc_dims->add_option("--variant", dims.variant, "plain | minus | plus")
      ->check(CLI::IsMember({"plain", "minus", "plus"}));
  sc_dims->add_option("--method", dims.method, "brute | formula | both")
      ->check(CLI::IsMember({"brute", "formula", "both"}));
  sc_dims->add_flag("--torsion", dims.torsion, "Compute torsion by Smith normal form");
  sc_dims->add_flag("--grading", dims.grading, "Use the determinant grading (n = 2, C_N x C_MN, N >= 3)");

  TableArgs table;
  auto* sc_table = app.add_subcommand("table", "Tables of (d, d^-) for n = 2");
  sc_table->add_option("family", table.family, "cyclic | bicyclic | pxp")->required();
  sc_table->add_option("--range", table.range, "cyclic: LO..HI (default 2..19)");
  sc_table->add_option("--groups", table.groups, "bicyclic: group literals (default the 15 reference rows)");
  sc_table->add_option("--primes", table.primes, "pxp: primes (default 5 7)");
  sc_table->add_flag("--torsion", table.torsion, "Add the torsion of M_2^-");
  sc_table->add_flag("--no-grading", table.no_grading, "Build the full bi-cyclic systems");

  VerifyArgs verify;
  auto* sc_verify = app.add_subcommand("verify", "Run a verification suite");
  sc_verify->add_option("--check", verify.check, "comult | kernel | grading | delta | formulas | manin | cusps | iso")
      ->required();
  sc_verify->add_option("--group", verify.group, "Group literal for group checks");
  sc_verify->add_option("--level", verify.level, "N,M for Gamma(N, MN) checks");
  sc_verify->add_option("--n", verify.n, "Symbol length");

  LevelArgs level;
  auto* sc_level = app.add_subcommand("level", "Index, cusps, genus, fixed cusps of Gamma(N, MN)");
  sc_level->add_option("--level", level.level, "N,M")->required();

  LevelArgs cosets;
  auto* sc_cosets = app.add_subcommand("cosets", "List coset symbols of Gamma(N, MN)");
  sc_cosets->add_option("--level", cosets.level, "N,M")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;

  try {
    if (*sc_dims) return cmd_dims(dims, cfg);
    if (*sc_table) return cmd_table(table, cfg);
    if (*sc_verify) return cmd_verify(verify, cfg);
    if (*sc_level) return cmd_level(level, cfg);
    if (*sc_cosets) return cmd_cosets(cosets, cfg);
  } catch (const UsageError& e) {
    return report_error(cfg, "usage", e.what(), kUsage);
  } catch (const BoundError& e) {
    return report_error(cfg, "bound", e.what(), kBound);
  } catch (const std::invalid_argument& e) {
    return report_error(cfg, "usage", e.what(), kUsage);
  } catch (const std::exception& e) {
    return report_error(cfg, "internal", e.what(), kFailed);
  }
  return kUsage;
}
