#include <chrono>
#include <ctime>
#include <iomanip>
#include <random>
#include <sstream>

#include "talab/cli.hpp"

namespace talab {

namespace {

std::string timestamp() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

Json header(const std::string& kind) {
  Json j;
  j["tool"] = "talab";
  j["schema"] = 1;
  j["kind"] = kind;
  j["timestamp"] = timestamp();
  return j;
}

struct Tally {
  std::vector<Status> statuses;
  void add(const Verdict& v) { statuses.push_back(v.status); }
};

BranchSequenceDescriptor descriptor(const SequenceSpec& q) {
  auto d = spine_sequence(q.spine, q.step, q.offset);
  d.name = q.name;
  return d;
}

std::shared_ptr<const Permutation> schedule(const Script& s, const PermSpec& p, const TTree* tree,
                                            const std::vector<Branch>& grafts, const EvaluableSet& L) {
  const auto& limits = s.limits;
  EvaluableSet hit = L;
  if (!p.hitting_set.empty()) hit = resolve_set(s, p.hitting_set);
  else if (tree && !grafts.empty()) hit = BlockTable(*tree, grafts[0]).index_set(limits);
  auto reqs = hitting_requirements(hit, p.hitting_depth, limits.horizon);
  if (!p.kill_sequence.empty()) {
    if (!tree) throw ConfigError("base.permutation.kill", "kill requirements need a tree below them");
    const auto& q = *std::find_if(s.sequences.begin(), s.sequences.end(),
                                  [&](const auto& e) { return e.name == p.kill_sequence; });
    const auto relevant = kill_indices(*tree, q.spine, descriptor(q), 2 * p.kill_m + 8);
    for (auto& r : kill_requirements(relevant, CylinderSet::cylinder(BitString::from_text("1")), p.kill_m))
      reqs.push_back(std::move(r));
  }
  return schedule_requirements(std::move(reqs));
}

// A requirement the search cannot meet blocks the stage without refuting it.
std::shared_ptr<const Permutation> make_perm(const Script& s, const PermSpec& p, const TTree* tree,
                                             const std::vector<Branch>& grafts, const EvaluableSet& L) {
  if (p.identity) return std::make_shared<IdentityPermutation>();
  try {
    return schedule(s, p, tree, grafts, L);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw GateFailure(std::string("permutation: ") + e.what(), Status::unknown);
  }
}

Json ordinals(const std::vector<Ordinal>& v) {
  Json a = Json::array();
  for (const auto& o : v) a.push_back(o.text());
  return a;
}

Json witness_rows(const CoherenceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json e;
    e["alpha"] = row.alpha.text();
    e["beta"] = row.beta.text();
    if (row.witness) {
      e["kind"] = row.witness->kind == WitnessKind::cap_below ? "CapBelow" : "SubsetBelow";
      e["F"] = ordinals(row.witness->F);
      e["certified"] = row.witness->certified;
    } else {
      e["kind"] = nullptr;
    }
    e["status"] = std::string(to_string(row.verdict.status));
    rows.push_back(std::move(e));
  }
  return rows;
}

Json stone_json(const StoneConvergence& c, const Branch& target) {
  Json j;
  j["target"] = target.text();
  j["verdict"] = to_json(c.verdict);
  if (c.separator) j["separator"] = c.separator->text();
  j["in"] = c.in;
  j["out"] = c.out;
  return j;
}

std::vector<std::vector<Pattern>> chains_of(const TTree& t) {
  std::vector<std::vector<Pattern>> chains{{}};
  for (const auto& st : t.stages())
    for (const auto& y : st.grafted) chains.push_back(y.segments);
  return chains;
}

Pattern random_pattern(std::mt19937_64& rng) {
  std::string head, cycle;
  for (auto n = rng() % 7; n > 0; --n) head.push_back('0' + static_cast<char>(rng() & 1U));
  for (auto n = 1 + rng() % 3; n > 0; --n) cycle.push_back('0' + static_cast<char>(rng() & 1U));
  return Pattern(head, cycle);
}

Branch random_maximal(const TTree& t, std::mt19937_64& rng) {
  const auto chains = chains_of(t);
  Branch y{chains[rng() % chains.size()]};
  do y.segments.push_back(random_pattern(rng));
  while (!t.is_maximal(y));
  return y;
}

struct Undecided {};

Json check_ultrafilter(const Script& s, const TTree& tree, std::size_t depth, Tally& tally) {
  std::mt19937_64 rng(s.seed);
  const auto chains = chains_of(tree);
  std::size_t round_trips = 0, pairs = 0, undecided = 0;
  Verdict v = Verdict::verified();
  constexpr std::size_t kRoundTripDepth = 24;
  for (std::size_t i = 0; i < s.samples && !v.is_refuted(); ++i) {
    const auto y = random_maximal(tree, rng);
    const Node start{{y.segments.begin(), y.segments.end() - 1}, {}};
    try {
      const auto got = branch_from_oracle(
          tree,
          [&](const Node& n) {
            const auto d = ultrafilter_decide(tree, y, n);
            if (!d.in) throw Undecided{};
            return *d.in;
          },
          kRoundTripDepth, start);
      if (got != y.segments.back().prefix(kRoundTripDepth))
        v = Verdict::refuted("round trip of " + y.text() + " gave " + got.text());
      ++round_trips;
    } catch (const Undecided&) {
      ++undecided;
    }
    for (std::size_t k = 0; k < depth && !v.is_refuted(); ++k) {
      BitString tail;
      for (auto n = 1 + rng() % 8; n > 0; --n) tail = tail.child(rng() & 1U);
      const Node sigma{chains[rng() % chains.size()], tail};
      const auto a = ultrafilter_decide(tree, y, sigma).in;
      const auto b = ultrafilter_decide(tree, y, sigma.dagger()).in;
      ++pairs;
      if (!a || !b) ++undecided;
      else if (*a == *b) v = Verdict::refuted("U of " + y.text() + " decides " + sigma.text() + " and its dagger alike");
    }
  }
  if (v.is_verified()) {
    v.detail = std::to_string(round_trips) + " round trips at depth " + std::to_string(kRoundTripDepth) + ", " +
               std::to_string(pairs) + " complementary pairs";
    if (undecided > 0) v = Verdict::unknown(std::to_string(undecided) + " decisions uncertified; " + v.detail, 0);
  }
  tally.add(v);
  Json j;
  j["name"] = "ultrafilter";
  j["verdict"] = to_json(v);
  return j;
}

Json check_phi(const Script& s, const std::vector<Branch>& paths, Tally& tally) {
  Verdict v = Verdict::verified();
  std::size_t compared = 0;
  for (const auto& x : paths)
    for (const auto& y : paths) {
      if (x == y) continue;
      try {
        if (phi(x, y) == x.length()) v = Verdict::refuted("phi_" + x.text() + " does not separate " + y.text());
        ++compared;
      } catch (const Error&) {
        // y is an initial part of x.
      }
    }
  for (const auto& q : s.sequences) {
    const auto d = descriptor(q);
    for (std::uint64_t n = 0; n < 50; ++n) {
      const auto got = phi(q.spine, d.at(n));
      const Ordinal want(q.spine.segments.size() - 1, q.step * n + q.offset);
      if (got != want) v = Verdict::refuted("phi_" + q.spine.text() + "(" + q.name + "_" + std::to_string(n) + ") = " + got.text());
      ++compared;
    }
  }
  if (v.is_verified()) v.detail = std::to_string(compared) + " pairs separated";
  tally.add(v);
  Json j;
  j["name"] = "phi";
  j["verdict"] = to_json(v);
  return j;
}

Json check_hats(const TTree& tree, const std::vector<Branch>& paths, std::size_t depth, Tally& tally) {
  Json rows = Json::array();
  Verdict all = Verdict::verified();
  for (const auto& x : paths)
    for (std::size_t k = 0; k < depth; ++k) {
      const auto alpha = e_lambda(x.length(), k);
      if (ord_succ(alpha) >= x.length()) continue;
      auto v = hats_disjoint(tree, x, alpha);
      if (!v.is_verified()) rows.push_back({{"branch", x.text()}, {"alpha", alpha.text()}, {"verdict", to_json(v)}});
      all = worst(all, v);
    }
  tally.add(all);
  Json j;
  j["name"] = "hats";
  j["verdict"] = to_json(all);
  j["failures"] = std::move(rows);
  return j;
}

}  // namespace

Json to_json(const Verdict& v) {
  Json j;
  j["status"] = std::string(to_string(v.status));
  j["detail"] = v.detail;
  j["evidence"] = v.evidence;
  j["horizon"] = v.horizon;
  return j;
}

Json to_json(const NamedVerdicts& checks) {
  Json a = Json::array();
  for (const auto& [name, v] : checks) {
    Json e;
    e["name"] = name;
    e.update(to_json(v));
    a.push_back(std::move(e));
  }
  return a;
}

int exit_code_of(const std::vector<Status>& statuses) {
  if (std::find(statuses.begin(), statuses.end(), Status::refuted) != statuses.end()) return 2;
  if (std::find(statuses.begin(), statuses.end(), Status::unknown) != statuses.end()) return 3;
  return 0;
}

RunResult run_script(const Script& s, const RunOptions& options) {
  const auto depth = options.depth.value_or(s.depth);
  auto checks = !options.checks.empty() ? options.checks : !s.checks.empty() ? s.checks : std::vector<std::string>{"validate"};
  for (const auto& c : checks)
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
      throw ConfigError("--check", "unknown check '" + c + "'");

  RunResult r;
  Json& rep = r.report = header("run");
  rep["source"] = s.source;
  rep["seed"] = s.seed;
  rep["depth"] = depth;
  rep["horizon"] = s.limits.horizon;
  Tally tally;

  const auto L = resolve_set(s, s.index_set);
  std::vector<StageSpec> specs;
  for (const auto& st : s.stages) {
    StageSpec spec;
    spec.kind = st.kind;
    spec.grafts = st.grafts;
    spec.allow_unknown = st.allow_unknown;
    if (st.kind == Stage::Kind::permutation) {
      spec.pi_source = [&s, &st, L](const TTree& t) { return make_perm(s, st.permutation, &t, st.grafts, L); };
    } else {
      spec.splitter = resolve_set(s, st.splitter);
      spec.splitter_name = st.splitter;
      for (const auto& text : st.tests) spec.tests.emplace_back(text, resolve_set(s, text));
    }
    specs.push_back(std::move(spec));
  }

  std::optional<PipelineResult> pipe;
  try {
    auto pi0 = make_perm(s, s.base_permutation, nullptr, {}, L);
    pipe = staged_pipeline(std::move(pi0), L, specs, s.branches, depth, s.limits);
  } catch (const GateFailure& e) {
    rep["construction"] = {{"error", e.what()}, {"status", std::string(to_string(e.status()))}};
    r.exit_code = e.status() == Status::refuted ? 2 : 3;
    rep["exit_code"] = r.exit_code;
    return r;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("stages", e.what());
  }

  Json construction = Json::array();
  for (std::size_t i = 0; i < pipe->stages.size(); ++i) {
    for (const auto& [name, v] : pipe->stages[i]) tally.add(v);
    construction.push_back({{"stage", i}, {"checks", to_json(pipe->stages[i])}});
  }
  rep["construction"] = std::move(construction);

  TTree tree = pipe->tree;
  for (std::size_t i = 0; i < s.overrides.size(); ++i) {
    const auto& [n, text] = s.overrides[i];
    if (!tree.contains(n)) throw ConfigError("overrides[" + std::to_string(i) + "].node", "node is not in the tree");
    tree = tree.with_override(n, resolve_set(s, text));
  }
  for (std::size_t i = 0; i < s.branches.size(); ++i)
    if (!tree.is_path(s.branches[i]))
      throw ConfigError("branches[" + std::to_string(i) + "]", s.branches[i].text() + " is not a path of the tree");
  r.tree = tree;

  Json results = Json::array();
  for (const auto& c : checks) {
    if (c == "validate") {
      const auto report = validate(tree, depth, s.branches, s.limits);
      tally.add(report.verdict);
      results.push_back({{"name", c}, {"verdict", to_json(report.verdict)}, {"checks", to_json(report.checks)}});
    } else if (c == "coherence") {
      Json per = Json::array();
      Verdict all = Verdict::verified();
      for (const auto& x : s.branches) {
        const BranchSequence seq(tree, x);
        const auto report = check_coherent(seq, materialize(seq, seq.length(), depth * x.segments.size()), s.limits);
        all = worst(all, report.verdict);
        per.push_back({{"branch", x.text()}, {"verdict", to_json(report.verdict)}, {"rows", witness_rows(report)}});
      }
      tally.add(all);
      results.push_back({{"name", c}, {"verdict", to_json(all)}, {"branches", std::move(per)}});
    } else if (c == "ultrafilter") {
      results.push_back(check_ultrafilter(s, tree, depth, tally));
    } else if (c == "phi") {
      results.push_back(check_phi(s, s.branches, tally));
    } else if (c == "hats") {
      results.push_back(check_hats(tree, s.branches, depth, tally));
    } else if (c == "convergence") {
      Json per = Json::array();
      for (const auto& q : s.sequences) {
        const auto conv = converges_in_stone(tree, descriptor(q), q.target, depth, s.limits);
        tally.add(conv.verdict);
        Json e;
        e["sequence"] = q.name;
        e.update(stone_json(conv, q.target));
        per.push_back(std::move(e));
      }
      results.push_back({{"name", c}, {"sequences", std::move(per)}});
    } else if (c == "kernel") {
      Json per = Json::array();
      for (const auto& q : s.sequences) {
        Json e;
        e["sequence"] = q.name;
        if (!tree.contains(Node{q.target.segments, BitString::from_text("0")})) {
          const auto v = Verdict::unknown("no stage is grafted above " + q.target.text(), 0);
          tally.add(v);
          e["verdict"] = to_json(v);
        } else {
          const auto k = no_convergence_kernel(tree, q.target, descriptor(q), s.limits);
          tally.add(k.verdict);
          e["separator"] = k.separator.text();
          e["verdict"] = to_json(k.verdict);
          e["in"] = k.in;
          e["out"] = k.out;
        }
        per.push_back(std::move(e));
      }
      Json certs = Json::array();
      for (const auto& cert : pipe->certificates)
        certs.push_back({{"branch", cert.x.text()}, {"set", cert.set}, {"verdict", to_json(cert.verdict)}});
      results.push_back({{"name", c}, {"certificates", std::move(certs)}, {"sequences", std::move(per)}});
    }
  }
  rep["checks"] = std::move(results);
  r.exit_code = exit_code_of(tally.statuses);
  rep["exit_code"] = r.exit_code;
  return r;
}

RunResult run_demo_kill(std::size_t m, std::size_t depth, const Limits& limits) {
  const auto d = kill_demo(m, depth, limits);
  RunResult r;
  Json& rep = r.report = header("demo-kill");
  rep["m"] = m;
  rep["depth"] = depth;
  rep["horizon"] = limits.horizon;
  rep["before"] = stone_json(d.before, d.x);
  rep["after"] = stone_json(d.after, d.after_target);
  rep["relevant"] = d.relevant;
  Json schedule = Json::array();
  for (const auto& e : d.pi->log()) schedule.push_back({{"requirement", e.name}, {"step", e.step}});
  rep["schedule"] = std::move(schedule);

  const bool killed = d.after.verdict.is_refuted() && d.after.separator && d.after.in.size() >= m && d.after.out.size() >= m;
  if (d.before.verdict.is_unknown() || d.after.verdict.is_unknown()) r.exit_code = 3;
  else r.exit_code = d.before.verdict.is_verified() && killed ? 0 : 2;
  std::ostringstream summary;
  summary << "before: " << to_string(d.before.verdict.status) << " to depth " << depth << "; after: "
          << to_string(d.after.verdict.status);
  if (d.after.separator)
    summary << " by " << d.after.separator->text() << " with " << d.after.in.size() << "+" << d.after.out.size()
            << " witnesses";
  rep["summary"] = summary.str();
  rep["exit_code"] = r.exit_code;
  return r;
}

}  // namespace talab
