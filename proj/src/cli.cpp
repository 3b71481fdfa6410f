#include "talab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>

#include "talab/set_literal.hpp"

namespace talab {

namespace {

std::string at(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }
std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(where.empty() ? "$" : where, "expected an object");
  for (const auto& [k, v] : j.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; }))
      throw ConfigError(at(where, k), "unknown field");
}

std::string str(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where, "expected a string");
  return j.get<std::string>();
}

std::uint64_t num(const Json& j, const std::string& where, std::uint64_t min = 0) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw ConfigError(where, "expected a non-negative integer");
  const auto v = j.get<std::uint64_t>();
  if (v < min) throw ConfigError(where, "must be at least " + std::to_string(min));
  return v;
}

bool flag(const Json& j, const std::string& where) {
  if (!j.is_boolean()) throw ConfigError(where, "expected true or false");
  return j.get<bool>();
}

template <typename T, typename F>
std::vector<T> list(const Json& j, const std::string& where, F&& item) {
  if (!j.is_array()) throw ConfigError(where, "expected an array");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(item(j[i], at(where, i)));
  return out;
}

Branch branch(const Json& j, const std::string& where) {
  try {
    return Branch::parse(str(j, where));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(where, e.what());
  }
}

Node node(const Json& j, const std::string& where) {
  try {
    return Node::parse(str(j, where));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(where, e.what());
  }
}

PermSpec perm(const Json& j, const std::string& where) {
  PermSpec p;
  if (j.is_string()) {
    if (j.get<std::string>() != "identity") throw ConfigError(where, "expected \"identity\" or an object");
    return p;
  }
  only_keys(j, where, {"hitting_depth", "hitting_set", "kill"});
  p.identity = false;
  if (j.contains("hitting_depth")) p.hitting_depth = num(j["hitting_depth"], at(where, "hitting_depth"));
  if (p.hitting_depth > 12) throw ConfigError(at(where, "hitting_depth"), "at most 12");
  if (j.contains("hitting_set")) p.hitting_set = str(j["hitting_set"], at(where, "hitting_set"));
  if (j.contains("kill")) {
    const auto w = at(where, "kill");
    only_keys(j["kill"], w, {"sequence", "m"});
    if (!j["kill"].contains("sequence")) throw ConfigError(w, "missing sequence");
    p.kill_sequence = str(j["kill"]["sequence"], at(w, "sequence"));
    p.kill_m = j["kill"].contains("m") ? num(j["kill"]["m"], at(w, "m")) : 20;
  }
  return p;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

void check_literal(const Script& s, const std::string& literal, const std::string& where) {
  try {
    resolve_set(s, literal);
  } catch (const Error& e) {
    throw ConfigError(where, e.what());
  }
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"validate", "coherence", "ultrafilter", "phi",
                                              "hats",     "convergence", "kernel"};
  return names;
}

EvaluableSet resolve_set(const Script& script, const std::string& literal) {
  std::set<std::string> active;
  std::function<EvaluableSet(const std::string&)> parse = [&](const std::string& text) {
    return parse_set_literal(text, [&](std::string_view name) -> std::optional<EvaluableSet> {
      const auto it = script.sets.find(std::string(name));
      if (it == script.sets.end()) return std::nullopt;
      if (!active.insert(it->first).second) throw Error("set '" + it->first + "' refers to itself");
      auto out = parse(it->second);
      active.erase(it->first);
      return out;
    });
  };
  return parse(literal);
}

Script parse_script(const Json& j, std::string source) {
  only_keys(j, "", {"schema", "seed", "depth", "horizon", "budget", "min_witnesses", "samples", "sets", "base",
                    "stages", "overrides", "branches", "sequences", "checks"});
  if (!j.contains("schema")) throw ConfigError("schema", "missing; expected 1");
  if (num(j["schema"], "schema") != 1) throw ConfigError("schema", "unsupported; expected 1");

  Script s;
  s.source = std::move(source);
  s.limits = Limits::from_env();
  if (j.contains("seed")) s.seed = num(j["seed"], "seed");
  if (j.contains("depth")) s.depth = num(j["depth"], "depth", 1);
  if (s.depth > 16) throw ConfigError("depth", "at most 16");
  if (j.contains("horizon")) s.limits.horizon = num(j["horizon"], "horizon", 1);
  if (j.contains("budget")) s.limits.budget = num(j["budget"], "budget", 1);
  if (j.contains("min_witnesses")) s.limits.min_witnesses = num(j["min_witnesses"], "min_witnesses", 1);
  if (j.contains("samples")) s.samples = num(j["samples"], "samples");

  if (j.contains("sets")) {
    if (!j["sets"].is_object()) throw ConfigError("sets", "expected an object");
    for (const auto& [name, v] : j["sets"].items()) {
      if (!is_identifier(name)) throw ConfigError(at("sets", name), "set names are identifiers");
      s.sets[name] = str(v, at("sets", name));
    }
    for (const auto& [name, text] : s.sets) check_literal(s, text, at("sets", name));
  }

  if (j.contains("base")) {
    only_keys(j["base"], "base", {"permutation", "index_set"});
    if (j["base"].contains("permutation")) s.base_permutation = perm(j["base"]["permutation"], "base.permutation");
    if (j["base"].contains("index_set")) s.index_set = str(j["base"]["index_set"], "base.index_set");
  }
  check_literal(s, s.index_set, "base.index_set");
  if (!s.base_permutation.hitting_set.empty())
    check_literal(s, s.base_permutation.hitting_set, "base.permutation.hitting_set");

  if (j.contains("sequences")) {
    s.sequences = list<SequenceSpec>(j["sequences"], "sequences", [](const Json& e, const std::string& w) {
      only_keys(e, w, {"name", "spine", "step", "offset", "target"});
      SequenceSpec q;
      if (!e.contains("name") || !e.contains("spine")) throw ConfigError(w, "needs name and spine");
      q.name = str(e["name"], at(w, "name"));
      q.spine = branch(e["spine"], at(w, "spine"));
      if (e.contains("step")) q.step = num(e["step"], at(w, "step"), 1);
      if (e.contains("offset")) q.offset = num(e["offset"], at(w, "offset"));
      q.target = e.contains("target") ? branch(e["target"], at(w, "target")) : q.spine;
      return q;
    });
    std::set<std::string> names;
    for (std::size_t i = 0; i < s.sequences.size(); ++i)
      if (!names.insert(s.sequences[i].name).second) throw ConfigError(at("sequences", i), "duplicate name");
  }
  auto known_sequence = [&](const PermSpec& p, const std::string& where) {
    if (p.kill_sequence.empty()) return;
    if (std::none_of(s.sequences.begin(), s.sequences.end(), [&](const auto& q) { return q.name == p.kill_sequence; }))
      throw ConfigError(at(where, "kill.sequence"), "no sequence named '" + p.kill_sequence + "'");
  };
  known_sequence(s.base_permutation, "base.permutation");

  if (j.contains("stages")) {
    s.stages = list<ScriptStage>(j["stages"], "stages", [&](const Json& e, const std::string& w) {
      only_keys(e, w, {"kind", "grafts", "permutation", "splitter", "tests", "allow_unknown"});
      ScriptStage st;
      const auto kind = e.contains("kind") ? str(e["kind"], at(w, "kind")) : "permutation";
      if (kind == "splitting") st.kind = Stage::Kind::splitting;
      else if (kind != "permutation") throw ConfigError(at(w, "kind"), "expected permutation or splitting");
      if (!e.contains("grafts")) throw ConfigError(w, "missing grafts");
      st.grafts = list<Branch>(e["grafts"], at(w, "grafts"), branch);
      if (e.contains("permutation")) st.permutation = perm(e["permutation"], at(w, "permutation"));
      known_sequence(st.permutation, at(w, "permutation"));
      if (!st.permutation.hitting_set.empty())
        check_literal(s, st.permutation.hitting_set, at(w, "permutation.hitting_set"));
      if (st.kind == Stage::Kind::splitting) {
        if (!e.contains("splitter")) throw ConfigError(w, "splitting stage needs a splitter");
        st.splitter = str(e["splitter"], at(w, "splitter"));
        check_literal(s, st.splitter, at(w, "splitter"));
      }
      if (e.contains("tests"))
        st.tests = list<std::string>(e["tests"], at(w, "tests"), [&](const Json& t, const std::string& tw) {
          auto text = str(t, tw);
          check_literal(s, text, tw);
          return text;
        });
      if (e.contains("allow_unknown")) st.allow_unknown = flag(e["allow_unknown"], at(w, "allow_unknown"));
      return st;
    });
  }

  if (j.contains("overrides"))
    s.overrides = list<std::pair<Node, std::string>>(j["overrides"], "overrides", [&](const Json& e, const std::string& w) {
      only_keys(e, w, {"node", "set"});
      if (!e.contains("node") || !e.contains("set")) throw ConfigError(w, "needs node and set");
      auto text = str(e["set"], at(w, "set"));
      check_literal(s, text, at(w, "set"));
      return std::pair{node(e["node"], at(w, "node")), text};
    });
  if (j.contains("branches")) s.branches = list<Branch>(j["branches"], "branches", branch);
  if (j.contains("checks")) {
    s.checks = list<std::string>(j["checks"], "checks", [](const Json& e, const std::string& w) {
      auto name = str(e, w);
      const auto& known = known_checks();
      if (std::find(known.begin(), known.end(), name) == known.end()) throw ConfigError(w, "unknown check '" + name + "'");
      return name;
    });
  }
  return s;
}

Script load_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
  return parse_script(j, path.filename().string());
}

}  // namespace talab
