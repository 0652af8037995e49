#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "json_schema.hpp"
#include "subprocess.hpp"

using namespace klazar::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json load_schema() {
  const char* path = std::getenv("KLAZAR_SCHEMA");
  REQUIRE(path != nullptr);
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

void check_against_schema(const std::string& out) {
  const json doc = json::parse(out);
  std::string error;
  const bool ok = validate_schema(doc, load_schema(), error);
  INFO("schema error: ", error, " for ", out);
  CHECK(ok);
}

// Inverse of the CLI's flatten: rebuilds the JSON document from
// "path<sep>scalar" lines so human output can be compared with --json.
json unflatten(const std::string& text, const std::string& sep) {
  json doc;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const auto split = line.find(sep);
    REQUIRE(split != std::string::npos);
    std::string path = line.substr(0, split);
    const json value = json::parse(line.substr(split + sep.size()));
    // tokenize path into keys and [index] steps
    json* cursor = &doc;
    size_t i = 0;
    while (i < path.size()) {
      if (path[i] == '.') ++i;
      if (path[i] == '[') {
        const auto close = path.find(']', i);
        const int idx = std::stoi(path.substr(i + 1, close - i - 1));
        if (!cursor->is_array()) *cursor = json::array();
        while (static_cast<int>(cursor->size()) <= idx)
          cursor->push_back(nullptr);
        cursor = &(*cursor)[idx];
        i = close + 1;
      } else {
        size_t end = i;
        while (end < path.size() && path[end] != '.' && path[end] != '[') ++end;
        const std::string key = path.substr(i, end - i);
        if (!cursor->is_object()) *cursor = json::object();
        cursor = &(*cursor)[key];
        i = end;
      }
    }
    if (value.is_array() && value.empty() && !cursor->is_array())
      *cursor = json::array();
    else
      *cursor = value;
  }
  return doc;
}

// Timing differs between the two invocations being compared.
void scrub_volatile(json& doc) {
  if (doc.is_object()) {
    doc.erase("elapsed_ms");
    for (auto& [key, value] : doc.items()) scrub_volatile(value);
  } else if (doc.is_array()) {
    for (auto& value : doc) scrub_volatile(value);
  }
}

}  // namespace

TEST_CASE("exit codes: success, validation error, guard refusal") {
  CHECK(run_command(cli_binary() + " contains --host 136/5/27 --pattern 14/23")
            .exit_code == 0);
  const auto bogus = run_command(cli_binary() + " bogus");
  CHECK(bogus.exit_code == 2);
  CHECK(!bogus.err.empty());  // usage hint goes to the error stream
  CHECK(run_command(cli_binary() + " contains --host 'x/y' --pattern 12")
            .exit_code == 2);
  CHECK(run_command(cli_binary() + " stats --partition ''").exit_code == 2);
  const auto guard =
      run_command(cli_binary() + " count --pattern 13/24 --n 20");
  CHECK(guard.exit_code == 3);
  CHECK(guard.out.empty());  // refusals never partially compute
  CHECK(!guard.err.empty());
  // matrix guard
  CHECK(run_command(cli_binary() +
                    " matrix max-ones --pattern-tuple 12 --r 7")
            .exit_code == 3);
  // strict parsing is opt-in
  CHECK(run_command(cli_binary() + " stats --partition 1635/24").exit_code ==
        0);
  CHECK(run_command(cli_binary() + " stats --partition 1635/24 --strict")
            .exit_code == 2);
}

TEST_CASE("paper fixtures through the CLI") {
  const auto contains =
      run_command(cli_binary() + " contains --host 136/5/27 --pattern 14/23");
  const json c = json::parse(contains.out);
  CHECK(c["contains"] == true);
  CHECK(c["witness"] == json({2, 3, 6, 7}));

  const auto stats =
      run_command(cli_binary() + " stats --partition 1267/345");
  const json s = json::parse(stats.out);
  CHECK(s["thickness"]["value"] == 3);
  CHECK(s["permutability"]["value"] == 4);
  CHECK(s["permutability"]["split"] ==
        json({{1}, {2, 3}, {4}, {5, 6}, {7}}));

  const auto count =
      run_command(cli_binary() + " count --pattern 1/2 --n 5");
  CHECK(json::parse(count.out)["count"] == "1");
}

TEST_CASE("every subcommand's JSON output validates against the schema") {
  const std::vector<std::string> invocations{
      " contains --host 136/5/27 --pattern 14/23",
      " contains --host 12/3 --pattern 1234",
      " stats --partition 1267/345",
      " count --pattern 13/24 --n 8",
      " count --pattern 13/24 --n 7 --m 3",
      " count --pattern 13/24 --n 6 --method oracle",
      " parallel-count --pattern '12|21' --n 4",
      " construct --pattern 123 --n 6",
      " exponents --pattern 13/24 --n-max 6",
      " matrix contains --host-tuple 123 --pattern-tuple 21",
      " matrix max-ones --pattern-tuple 12 --r 3",
      " matrix count --pattern-tuple 12 --r 2",
      " mc --n 3 --k 1 --trials 500 --seed 7",
      " mc --n 4 --k 2 --trials 200 --seed 9 --r 4",
  };
  for (const auto& args : invocations) {
    const auto result = run_command(cli_binary() + args);
    INFO("invocation: ", args, " stderr: ", result.err);
    REQUIRE(result.exit_code == 0);
    check_against_schema(result.out);
  }
}

TEST_CASE("human and JSON outputs carry identical data") {
  const std::vector<std::string> invocations{
      " contains --host 136/5/27 --pattern 14/23",
      " stats --partition 1267/345",
      " count --pattern 13/24 --n 8",
      " mc --n 3 --k 1 --trials 200 --seed 5",
      " exponents --pattern 13/24 --n-max 5",
  };
  for (const auto& args : invocations) {
    const auto as_json = run_command(cli_binary() + args + " --json");
    const auto as_human = run_command(cli_binary() + args + " --human");
    REQUIRE(as_json.exit_code == 0);
    REQUIRE(as_human.exit_code == 0);
    json from_human = unflatten(as_human.out, " = ");
    json from_json = json::parse(as_json.out);
    scrub_volatile(from_human);
    scrub_volatile(from_json);
    CHECK(from_human == from_json);
  }
  // format flags are mutually exclusive
  CHECK(run_command(cli_binary() + " stats --partition 12 --human --tsv")
            .exit_code == 2);
}

TEST_CASE("tsv emitters") {
  const auto exp =
      run_command(cli_binary() + " exponents --pattern 13/24 --n-max 5 --tsv");
  REQUIRE(exp.exit_code == 0);
  std::istringstream lines(exp.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n\tcount\tratio\tlower_bound_ratio");
  int rows = 0;
  std::string row;
  while (std::getline(lines, row))
    if (!row.empty()) ++rows;
  CHECK(rows == 4);  // n = 2..5

  const auto cons =
      run_command(cli_binary() + " construct --pattern 123 --n 6 --tsv");
  REQUIRE(cons.exit_code == 0);
  std::istringstream plines(cons.out);
  int partitions = 0;
  while (std::getline(plines, row))
    if (!row.empty()) ++partitions;
  CHECK(partitions == 6);  // 3!^1
}

TEST_CASE("mc auto-reports a seed when none is given") {
  const auto result = run_command(cli_binary() + " mc --n 3 --k 1 --trials 50");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc["seed"].is_number());
}

TEST_CASE("count caching: store, hit, flag precedence over environment") {
  const auto dir = fs::temp_directory_path() /
                   ("klazar_cli_cache_" + std::to_string(::getpid()));
  const auto env_dir = fs::temp_directory_path() /
                       ("klazar_cli_cache_env_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::remove_all(env_dir);

  const std::string base = cli_binary() + " count --pattern 13/24 --n 8";
  const auto miss =
      run_command(base + " --cache-dir " + dir.string());
  REQUIRE(miss.exit_code == 0);
  CHECK(json::parse(miss.out)["cached"] == false);
  const auto hit = run_command(base + " --cache-dir " + dir.string());
  REQUIRE(hit.exit_code == 0);
  const json hdoc = json::parse(hit.out);
  CHECK(hdoc["cached"] == true);
  CHECK(hdoc["count"] == "1430");

  // flag wins over the environment variable
  const auto flag_wins = run_command("KLAZAR_CACHE_DIR=" + env_dir.string() +
                                     " " + base + " --cache-dir " +
                                     dir.string());
  REQUIRE(flag_wins.exit_code == 0);
  CHECK(json::parse(flag_wins.out)["cached"] == true);  // dir already primed
  CHECK(!fs::exists(env_dir / "klazar-cache.json"));

  // env alone works
  const auto env_used = run_command("KLAZAR_CACHE_DIR=" + env_dir.string() +
                                    " " + base);
  REQUIRE(env_used.exit_code == 0);
  CHECK(json::parse(env_used.out)["cached"] == false);
  CHECK(fs::exists(env_dir / "klazar-cache.json"));

  // cache subcommand
  const auto show = run_command(cli_binary() + " cache show --cache-dir " +
                                dir.string());
  REQUIRE(show.exit_code == 0);
  const json sdoc = json::parse(show.out);
  CHECK(sdoc["enabled"] == true);
  CHECK(sdoc["entries"].size() == 1);
  check_against_schema(show.out);
  const auto cleared = run_command(cli_binary() + " cache clear --cache-dir " +
                                   dir.string());
  REQUIRE(cleared.exit_code == 0);
  CHECK(!fs::exists(dir / "klazar-cache.json"));

  // a cache dir that is actually a file: warn and proceed uncached
  const auto blocked_parent = fs::temp_directory_path() /
                              ("klazar_cli_blocked_" +
                               std::to_string(::getpid()));
  fs::create_directories(blocked_parent);
  const auto blocked = blocked_parent / "file";
  std::ofstream(blocked) << "occupied";
  const auto degraded =
      run_command(base + " --cache-dir " + blocked.string());
  CHECK(degraded.exit_code == 0);
  CHECK(json::parse(degraded.out)["count"] == "1430");
  CHECK(degraded.err.find("warning") != std::string::npos);

  fs::remove_all(dir);
  fs::remove_all(env_dir);
  fs::remove_all(blocked_parent);
}

TEST_CASE("worker flag changes nothing observable") {
  const auto one = run_command(cli_binary() + " count --pattern 123 --n 9");
  const auto four =
      run_command(cli_binary() + " count --pattern 123 --n 9 --workers 4");
  REQUIRE(one.exit_code == 0);
  REQUIRE(four.exit_code == 0);
  CHECK(json::parse(one.out)["count"] == json::parse(four.out)["count"]);
  // KLAZAR_WORKERS is honored when no flag is given
  const auto env = run_command("KLAZAR_WORKERS=3 " + cli_binary() +
                               " count --pattern 123 --n 9");
  REQUIRE(env.exit_code == 0);
  CHECK(json::parse(env.out)["count"] == json::parse(one.out)["count"]);
}

TEST_CASE("guard overrides through the CLI") {
  const auto ok = run_command(cli_binary() +
                              " count --pattern 12 --n 16 --override-guards");
  REQUIRE(ok.exit_code == 0);
  CHECK(json::parse(ok.out)["count"] == "1");
  const auto budget = run_command(
      cli_binary() + " parallel-count --pattern '12|12|12' --n 6");
  CHECK(budget.exit_code == 3);
}
