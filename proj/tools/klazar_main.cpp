// klazar: set-partition pattern avoidance toolbox.
//
// Subcommands: contains, stats, count, parallel-count, construct, exponents,
// matrix, mc, cache. Every subcommand emits one JSON document (default), a
// flat human rendering, or TSV. Exit codes: 0 success, 2 parse/validation
// error, 3 guard refusal.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "klazar/cache.hpp"
#include "klazar/correspond.hpp"
#include "klazar/enumerate.hpp"
#include "klazar/error.hpp"
#include "klazar/matrix.hpp"
#include "klazar/montecarlo.hpp"
#include "klazar/partition.hpp"
#include "klazar/stats.hpp"

namespace {

using nlohmann::json;

enum class Format { json_doc, human, tsv };

struct GlobalFlags {
  Format format = Format::json_doc;
  std::optional<int> workers;
  std::optional<std::string> cache_dir;
  bool strict = false;
};

int resolve_workers(const GlobalFlags& g) {
  if (g.workers) return std::max(1, *g.workers);
  if (const char* env = std::getenv("KLAZAR_WORKERS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (...) {
      std::cerr << "warning: ignoring malformed KLAZAR_WORKERS='" << env
                << "'\n";
    }
  }
  return 1;
}

std::optional<std::string> resolve_cache_dir(const GlobalFlags& g) {
  if (g.cache_dir) return g.cache_dir;
  if (const char* env = std::getenv("KLAZAR_CACHE_DIR")) return std::string(env);
  return std::nullopt;
}

void flatten(const json& j, const std::string& path,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i)
      flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    if (j.empty())
      out.emplace_back(path, "[]");
  } else {
    out.emplace_back(path, j.dump());
  }
}

void emit(const json& doc, const GlobalFlags& g) {
  switch (g.format) {
    case Format::json_doc:
      std::cout << doc.dump(2) << '\n';
      break;
    case Format::human:
    case Format::tsv: {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(doc, "", rows);
      const char* sep = g.format == Format::human ? " = " : "\t";
      for (const auto& [key, value] : rows)
        std::cout << key << sep << value << '\n';
      break;
    }
  }
}

json witness_json(const std::optional<klazar::ContainmentWitness>& w) {
  if (!w) return nullptr;
  return json(w->positions);
}

double finite_or_null_marker(double v) { return v; }  // NaN dumps as null

// ---- matrix argument parsing -------------------------------------------

klazar::DMatrix matrix_from_spec(const std::string& text) {
  std::string payload = text;
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in.good())
      throw klazar::domain_error("cannot read matrix file " + text.substr(1));
    payload.assign(std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>());
  }
  json doc = json::parse(payload, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("dims") ||
      !doc.contains("ones"))
    throw klazar::domain_error(
        "matrix spec must be JSON {\"dims\": [...], \"ones\": [[...]]}");
  std::vector<int> dims = doc["dims"].get<std::vector<int>>();
  std::vector<std::vector<int>> ones =
      doc["ones"].get<std::vector<std::vector<int>>>();
  return klazar::make_dmatrix(std::move(dims), std::move(ones));
}

json matrix_to_json(const klazar::DMatrix& m) {
  return json{{"dims", m.dims}, {"ones", m.ones}};
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// ---- subcommand bodies ---------------------------------------------------

struct ContainsArgs {
  std::string host, pattern;
};

int run_contains(const ContainsArgs& a, const GlobalFlags& g) {
  const auto host = klazar::parse_partition(a.host, g.strict);
  const auto pattern = klazar::parse_partition(a.pattern, g.strict);
  const auto witness = klazar::contains(host, pattern);
  json doc{{"command", "contains"},
           {"host", klazar::format_partition(host)},
           {"pattern", klazar::format_partition(pattern)},
           {"contains", witness.has_value()},
           {"witness", witness_json(witness)}};
  emit(doc, g);
  return 0;
}

struct StatsArgs {
  std::string partition;
};

int run_stats(const StatsArgs& a, const GlobalFlags& g) {
  const auto p = klazar::parse_partition(a.partition, g.strict);
  const auto th = klazar::thickness(p);
  const auto pm = klazar::permutability(p);
  json doc{{"command", "stats"},
           {"partition", klazar::format_partition(p)},
           {"n", p.n()},
           {"rank", klazar::rank(p)},
           {"layered", klazar::is_layered(p)},
           {"thickness", json{{"value", th.value},
                              {"certificate", th.certificate}}},
           {"permutability",
            json{{"value", pm.value},
                 {"split", klazar::split_intervals(pm.split, p)},
                 {"cut_points", pm.split.cut_points}}}};
  emit(doc, g);
  return 0;
}

struct CountArgs {
  std::string pattern;
  int n = 0;
  std::optional<int> m;
  std::string method = "pruned";
  std::optional<int> guard_n;
  bool override_guards = false;
};

int run_count(const CountArgs& a, const GlobalFlags& g) {
  const auto pattern = klazar::parse_partition(a.pattern, g.strict);
  const std::string pattern_text = klazar::format_partition(pattern);

  std::optional<klazar::SequenceCache> cache;
  if (auto dir = resolve_cache_dir(g)) {
    cache.emplace(*dir);
    if (!cache->warning().empty())
      std::cerr << "warning: " << cache->warning() << '\n';
  }

  json doc{{"command", "count"}, {"pattern", pattern_text}, {"n", a.n}};
  if (a.m) doc["m"] = *a.m;

  if (cache && cache->enabled()) {
    if (auto hit = cache->lookup(pattern_text, a.n, a.m)) {
      doc["count"] = hit->count_decimal;
      doc["method"] = hit->method;
      doc["elapsed_ms"] = 0.0;
      doc["cached"] = true;
      emit(doc, g);
      return 0;
    }
  }

  klazar::CountOptions opts;
  opts.method = a.method;
  opts.workers = resolve_workers(g);
  opts.override_guards = a.override_guards;
  if (a.guard_n) {
    opts.guard_n = *a.guard_n;
    opts.oracle_guard_n = *a.guard_n;
  }
  const klazar::CountReport report =
      a.m ? klazar::count_avoiders_by_blocks(pattern, a.n, *a.m, opts)
          : klazar::count_avoiders(pattern, a.n, opts);
  doc["count"] = klazar::to_decimal(report.count);
  doc["method"] = report.method;
  doc["elapsed_ms"] = report.elapsed_ms;
  doc["cached"] = false;
  if (cache && cache->enabled()) {
    cache->store(klazar::CacheEntry{pattern_text, a.n, a.m,
                                    klazar::to_decimal(report.count),
                                    report.method,
                                    std::string(klazar::engine_version)});
    if (!cache->warning().empty())
      std::cerr << "warning: " << cache->warning() << '\n';
  }
  emit(doc, g);
  return 0;
}

struct ParallelCountArgs {
  std::string pattern;
  int n = 0;
  std::optional<double> budget;
  bool override_budget = false;
};

int run_parallel_count(const ParallelCountArgs& a, const GlobalFlags& g) {
  const auto pattern = klazar::parse_perm_tuple(a.pattern);
  klazar::TupleCountOptions opts;
  if (a.budget) opts.budget = *a.budget;
  opts.override_budget = a.override_budget;
  const auto report = klazar::count_parallel_avoiders(pattern, a.n, opts);
  json doc{{"command", "parallel-count"},
           {"pattern", report.pattern},
           {"n", report.n},
           {"count", klazar::to_decimal(report.count)},
           {"method", report.method},
           {"elapsed_ms", report.elapsed_ms}};
  emit(doc, g);
  return 0;
}

struct ConstructArgs {
  std::string pattern;
  int n = 0;
  bool override_guards = false;
};

int run_construct(const ConstructArgs& a, const GlobalFlags& g) {
  const auto pattern = klazar::parse_partition(a.pattern, g.strict);
  klazar::ConstructionOptions opts;
  opts.override_guards = a.override_guards;
  const auto family = klazar::lowerbound_construction(pattern, a.n, opts);
  if (g.format == Format::tsv) {
    for (const auto& p : family)
      std::cout << klazar::format_partition(p) << '\n';
    return 0;
  }
  json list = json::array();
  for (const auto& p : family) list.push_back(klazar::format_partition(p));
  json doc{{"command", "construct"},
           {"pattern", klazar::format_partition(pattern)},
           {"n", a.n},
           {"permutability", klazar::permutability(pattern).value},
           {"count", klazar::to_decimal(klazar::BigInt(family.size()))},
           {"partitions", list}};
  emit(doc, g);
  return 0;
}

struct ExponentsArgs {
  std::string pattern;
  int n_max = 2;
  std::optional<int> guard_n;
  bool override_guards = false;
};

int run_exponents(const ExponentsArgs& a, const GlobalFlags& g) {
  const auto pattern = klazar::parse_partition(a.pattern, g.strict);
  klazar::CountOptions opts;
  opts.workers = resolve_workers(g);
  opts.override_guards = a.override_guards;
  if (a.guard_n) opts.guard_n = *a.guard_n;
  const auto table = klazar::exponent_table(pattern, a.n_max, opts);
  if (g.format == Format::tsv) {
    std::cout << "n\tcount\tratio\tlower_bound_ratio\n";
    for (const auto& row : table.rows) {
      std::cout << row.n << '\t' << klazar::to_decimal(row.count) << '\t'
                << json(finite_or_null_marker(row.ratio)).dump() << '\t'
                << json(finite_or_null_marker(row.lower_bound_ratio)).dump()
                << '\n';
    }
    return 0;
  }
  json rows = json::array();
  for (const auto& row : table.rows)
    rows.push_back(json{{"n", row.n},
                        {"count", klazar::to_decimal(row.count)},
                        {"ratio", row.ratio},
                        {"lower_bound_ratio", row.lower_bound_ratio}});
  json doc{{"command", "exponents"},
           {"pattern", klazar::format_partition(pattern)},
           {"n_max", a.n_max},
           {"pm", table.pm},
           {"fitted_c1", table.fitted_c1},
           {"rows", rows}};
  emit(doc, g);
  return 0;
}

struct MatrixArgs {
  std::string verb;  // contains | max-ones | count
  std::string host;
  std::string host_tuple;
  std::string pattern;
  std::string pattern_tuple;
  int r = 0;
  bool override_guards = false;
};

klazar::DMatrix resolve_matrix(const std::string& json_spec,
                               const std::string& tuple_spec,
                               const char* role) {
  if (!json_spec.empty() && !tuple_spec.empty())
    throw klazar::domain_error(std::string("give the ") + role +
                               " either as JSON or as a tuple, not both");
  if (!json_spec.empty()) return matrix_from_spec(json_spec);
  if (!tuple_spec.empty())
    return klazar::build_perm_matrix(klazar::parse_perm_tuple(tuple_spec));
  throw klazar::domain_error(std::string("missing ") + role + " matrix");
}

int run_matrix(const MatrixArgs& a, const GlobalFlags& g) {
  const auto pattern = resolve_matrix(a.pattern, a.pattern_tuple, "pattern");
  json doc{{"command", "matrix"},
           {"verb", a.verb},
           {"pattern", matrix_to_json(pattern)}};
  if (a.verb == "contains") {
    const auto host = resolve_matrix(a.host, a.host_tuple, "host");
    doc["host"] = matrix_to_json(host);
    doc["contains"] = klazar::matrix_contains(host, pattern);
  } else if (a.verb == "max-ones") {
    klazar::MatrixGuardOptions opts{a.override_guards};
    doc["r"] = a.r;
    doc["max_ones"] = klazar::max_ones_avoiding(pattern, a.r, opts);
  } else {  // count
    klazar::MatrixGuardOptions opts{a.override_guards};
    doc["r"] = a.r;
    doc["count"] =
        klazar::to_decimal(klazar::count_avoiding_matrices(pattern, a.r, opts));
  }
  emit(doc, g);
  return 0;
}

struct McArgs {
  int n = 0;
  int k = 1;
  std::int64_t trials = 1000;
  std::optional<std::uint64_t> seed;
  std::optional<int> r;
  std::string pattern;
};

int run_mc(const McArgs& a, const GlobalFlags& g) {
  klazar::McOptions opts;
  opts.r = a.r;
  if (!a.pattern.empty()) opts.pattern = klazar::parse_perm_tuple(a.pattern);
  const std::uint64_t seed = a.seed ? *a.seed : fresh_seed();
  const auto report = klazar::run_mc(a.n, a.k, a.trials, seed, opts);
  json doc{{"command", "mc"},
           {"n", report.n},
           {"k", report.k},
           {"trials", report.trials},
           {"seed", report.seed},
           {"successes", report.successes},
           {"estimate", report.estimate},
           {"stderr", report.stderr_},
           {"violations", report.violations},
           {"converse_gaps", report.converse_gaps},
           {"r", report.grid_checked ? json(report.r) : json(nullptr)}};
  emit(doc, g);
  return 0;
}

struct CacheArgs {
  std::string verb;  // show | clear | path
};

int run_cache(const CacheArgs& a, const GlobalFlags& g) {
  const auto dir = resolve_cache_dir(g);
  if (!dir)
    throw klazar::domain_error(
        "no cache directory: pass --cache-dir or set KLAZAR_CACHE_DIR");
  klazar::SequenceCache cache(*dir);
  if (!cache.warning().empty())
    std::cerr << "warning: " << cache.warning() << '\n';
  json doc{{"command", "cache"},
           {"verb", a.verb},
           {"path", cache.file_path().string()},
           {"enabled", cache.enabled()}};
  if (a.verb == "show") {
    json entries = json::array();
    for (const auto& e : cache.entries()) {
      json row{{"pattern", e.pattern},
               {"n", e.n},
               {"count", e.count_decimal},
               {"method", e.method},
               {"engine", e.engine}};
      if (e.m) row["m"] = *e.m;
      entries.push_back(std::move(row));
    }
    doc["entries"] = entries;
  } else if (a.verb == "clear") {
    cache.clear();
    doc["cleared"] = true;
  }
  emit(doc, g);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"set partition pattern avoidance toolbox"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalFlags g;
  bool flag_human = false, flag_tsv = false, flag_json = false;
  app.add_flag("--json", flag_json, "JSON output (default)");
  auto* human_flag = app.add_flag("--human", flag_human, "flat human output");
  auto* tsv_flag = app.add_flag("--tsv", flag_tsv, "TSV output");
  human_flag->excludes(tsv_flag);
  app.get_option("--json")->excludes(human_flag)->excludes(tsv_flag);
  int workers_value = 0;
  auto* workers_opt = app.add_option("--workers", workers_value,
                                     "enumeration worker pool size");
  std::string cache_dir_value;
  auto* cache_opt = app.add_option("--cache-dir", cache_dir_value,
                                   "sequence cache directory");
  app.add_flag("--strict", g.strict, "reject non-canonical partition text");

  ContainsArgs contains_args;
  auto* sc_contains =
      app.add_subcommand("contains", "does a partition contain a pattern");
  sc_contains->add_option("--host", contains_args.host)->required();
  sc_contains->add_option("--pattern", contains_args.pattern)->required();

  StatsArgs stats_args;
  auto* sc_stats = app.add_subcommand(
      "stats", "rank, layeredness, thickness and permutability");
  sc_stats->add_option("--partition", stats_args.partition)->required();

  CountArgs count_args;
  auto* sc_count = app.add_subcommand("count", "count pattern avoiders");
  sc_count->add_option("--pattern", count_args.pattern)->required();
  sc_count->add_option("--n", count_args.n)->required();
  int count_m = -1;
  auto* count_m_opt = sc_count->add_option("--m", count_m, "exact block count");
  sc_count->add_option("--method", count_args.method,
                       "pruned (default) or oracle");
  int count_guard = 0;
  auto* count_guard_opt =
      sc_count->add_option("--guard-n", count_guard, "raise the n guard");
  sc_count->add_flag("--override-guards", count_args.override_guards);

  ParallelCountArgs pc_args;
  auto* sc_pc = app.add_subcommand("parallel-count",
                                   "count k-tuples avoiding a pattern tuple");
  sc_pc->add_option("--pattern", pc_args.pattern)->required();
  sc_pc->add_option("--n", pc_args.n)->required();
  double pc_budget = 0;
  auto* pc_budget_opt =
      sc_pc->add_option("--budget", pc_budget, "tuple enumeration budget");
  sc_pc->add_flag("--override-budget", pc_args.override_budget);

  ConstructArgs construct_args;
  auto* sc_construct = app.add_subcommand(
      "construct", "emit the avoider family of correspondent partitions");
  sc_construct->add_option("--pattern", construct_args.pattern)->required();
  sc_construct->add_option("--n", construct_args.n)->required();
  sc_construct->add_flag("--override-guards", construct_args.override_guards);

  ExponentsArgs exp_args;
  auto* sc_exp = app.add_subcommand("exponents",
                                    "log B_n / (n log n) table for n = 2..n_max");
  sc_exp->add_option("--pattern", exp_args.pattern)->required();
  sc_exp->add_option("--n-max", exp_args.n_max)->required();
  int exp_guard = 0;
  auto* exp_guard_opt =
      sc_exp->add_option("--guard-n", exp_guard, "raise the n guard");
  sc_exp->add_flag("--override-guards", exp_args.override_guards);

  MatrixArgs matrix_args;
  auto* sc_matrix =
      app.add_subcommand("matrix", "d-dimensional 0-1 matrix avoidance");
  sc_matrix->add_option("verb", matrix_args.verb, "contains | max-ones | count")
      ->required()
      ->check(CLI::IsMember({"contains", "max-ones", "count"}));
  sc_matrix->add_option("--host", matrix_args.host,
                        "host matrix JSON or @file");
  sc_matrix->add_option("--host-tuple", matrix_args.host_tuple,
                        "host as a permutation tuple");
  sc_matrix->add_option("--pattern", matrix_args.pattern,
                        "pattern matrix JSON or @file");
  sc_matrix->add_option("--pattern-tuple", matrix_args.pattern_tuple,
                        "pattern as a permutation tuple");
  sc_matrix->add_option("--r", matrix_args.r, "side length");
  sc_matrix->add_flag("--override-guards", matrix_args.override_guards);

  McArgs mc_args;
  auto* sc_mc = app.add_subcommand("mc", "random order probes");
  sc_mc->add_option("--n", mc_args.n)->required();
  sc_mc->add_option("--k", mc_args.k)->required();
  sc_mc->add_option("--trials", mc_args.trials);
  std::uint64_t mc_seed = 0;
  auto* mc_seed_opt = sc_mc->add_option("--seed", mc_seed);
  int mc_r = 0;
  auto* mc_r_opt =
      sc_mc->add_option("--r", mc_r, "grid resolution for the matrix check");
  sc_mc->add_option("--pattern", mc_args.pattern,
                    "tuple pattern for the grid check (default 12|...|12)");

  CacheArgs cache_args;
  auto* sc_cache = app.add_subcommand("cache", "inspect the sequence cache");
  sc_cache->add_option("verb", cache_args.verb, "show | clear | path")
      ->required()
      ->check(CLI::IsMember({"show", "clear", "path"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message to stderr
    return 2;
  }

  if (*workers_opt) g.workers = workers_value;
  if (*cache_opt) g.cache_dir = cache_dir_value;
  if (flag_human) g.format = Format::human;
  if (flag_tsv) g.format = Format::tsv;

  try {
    if (*sc_contains) return run_contains(contains_args, g);
    if (*sc_stats) return run_stats(stats_args, g);
    if (*sc_count) {
      if (*count_m_opt) count_args.m = count_m;
      if (*count_guard_opt) count_args.guard_n = count_guard;
      return run_count(count_args, g);
    }
    if (*sc_pc) {
      if (*pc_budget_opt) pc_args.budget = pc_budget;
      return run_parallel_count(pc_args, g);
    }
    if (*sc_construct) return run_construct(construct_args, g);
    if (*sc_exp) {
      if (*exp_guard_opt) exp_args.guard_n = exp_guard;
      return run_exponents(exp_args, g);
    }
    if (*sc_matrix) return run_matrix(matrix_args, g);
    if (*sc_mc) {
      if (*mc_seed_opt) mc_args.seed = mc_seed;
      if (*mc_r_opt) mc_args.r = mc_r;
      return run_mc(mc_args, g);
    }
    if (*sc_cache) return run_cache(cache_args, g);
  } catch (const klazar::guard_error& e) {
    std::cerr << "guard refusal: " << e.what() << '\n';
    return 3;
  } catch (const klazar::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
