#pragma once

// Declarative run scripts (JSON, schema 1) and the JSON reports they produce.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "talab/construct.hpp"

namespace talab {

using Json = nlohmann::ordered_json;

/// Malformed script; `where` is a JSON path such as "stages[1].grafts[0]".
class ConfigError : public Error {
 public:
  ConfigError(const std::string& where, const std::string& what) : Error(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct SequenceSpec {
  std::string name;
  Branch spine;
  std::uint64_t step = 1;
  std::uint64_t offset = 0;
  Branch target;
};

struct PermSpec {
  bool identity = true;
  std::size_t hitting_depth = 0;
  /// Index set for hitting requirements; empty means the blocks of the
  /// first graft (later stages) or L (the base).
  std::string hitting_set;
  std::size_t kill_m = 0;
  std::string kill_sequence;
};

struct ScriptStage {
  Stage::Kind kind = Stage::Kind::permutation;
  std::vector<Branch> grafts;
  PermSpec permutation;
  std::string splitter;
  std::vector<std::string> tests;
  bool allow_unknown = false;
};

struct Script {
  std::string source;
  std::uint64_t seed = 0;
  std::size_t depth = 8;
  Limits limits;
  std::map<std::string, std::string> sets;
  PermSpec base_permutation;
  std::string index_set = "omega";
  std::vector<ScriptStage> stages;
  std::vector<std::pair<Node, std::string>> overrides;
  std::vector<Branch> branches;
  std::vector<SequenceSpec> sequences;
  std::vector<std::string> checks;
  std::size_t samples = 20;
};

Script parse_script(const Json& j, std::string source = "<inline>");
Script load_script(const std::filesystem::path& path);

/// Resolves named sets of the script, then builtins.
EvaluableSet resolve_set(const Script& script, const std::string& literal);

/// Check names accepted by run_script.
const std::vector<std::string>& known_checks();

struct RunOptions {
  std::vector<std::string> checks;
  std::optional<std::size_t> depth;
};

struct RunResult {
  int exit_code = 0;
  Json report;
  std::optional<TTree> tree;
};

/// Builds the tree and runs the checks. Exit code 0 when everything is
/// verified, 2 on any refutation, 3 when an unknown verdict is left or
/// blocked a construction step. Throws ConfigError on bad references.
RunResult run_script(const Script& script, const RunOptions& options = {});

/// End-to-end kill scenario as a report.
RunResult run_demo_kill(std::size_t m, std::size_t depth, const Limits& limits);

Json to_json(const Verdict& v);
Json to_json(const NamedVerdicts& checks);

/// 2 if any status is refuted, else 3 if any is unknown, else 0.
int exit_code_of(const std::vector<Status>& statuses);

}  // namespace talab
