#include "rgspec/checker.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "rgspec/eval.hpp"

namespace rgspec {

const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Vacuous: return "VACUOUS";
    case Verdict::Skipped: return "SKIPPED";
    case Verdict::EvalFault: return "EVAL_FAULT";
  }
  return "?";
}

const char* flag_str(TraceFlag f) {
  switch (f) {
    case TraceFlag::AllPass: return "ALL_PASS";
    case TraceFlag::RelyBroken: return "RELY_BROKEN";
    case TraceFlag::GuaranteeBroken: return "GUARANTEE_BROKEN";
    case TraceFlag::PostFailed: return "POST_FAILED";
    case TraceFlag::PreRejected: return "PRE_REJECTED";
    case TraceFlag::Livelock: return "LIVELOCK";
    case TraceFlag::StepBoundHit: return "STEP_BOUND_HIT";
    case TraceFlag::Faulted: return "FAULTED";
  }
  return "?";
}

bool TraceReport::all_pass() const { return has_flag(TraceFlag::AllPass); }

bool TraceReport::has_flag(TraceFlag f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

int layer_for_env_pairs(const std::vector<ConditionLayer>& layers,
                        const std::vector<StatePair>& env_pairs) {
  for (size_t l = 0; l < layers.size(); ++l) {
    bool ok = true;
    for (const auto& pair : env_pairs) {
      bool holds = false;
      try {
        holds = eval_predicate(*layers[l].rely, pair);
      } catch (const EvalError&) {
        holds = false;
      }
      if (!holds) {
        ok = false;
        break;
      }
    }
    if (ok) return static_cast<int>(l);
  }
  return kRelyBroken;
}

namespace {

// env transition relative to process index p: anything not performed by p.
bool is_env_for(const Transition& t, int p) { return t.actor != p; }

struct LayerScan {
  int active = kRelyBroken;
  int broken_at = -1;  // index where the last viable layer died
};

LayerScan scan_layers(const Trace& trace, const ProcessSpec& ps, int p) {
  size_t nl = ps.layers.size();
  std::vector<int> first_violation(nl, -1);
  for (size_t i = 0; i < trace.transitions.size(); ++i) {
    const Transition& t = trace.transitions[i];
    if (!is_env_for(t, p)) continue;
    for (size_t l = 0; l < nl; ++l) {
      if (first_violation[l] >= 0) continue;
      bool holds = false;
      try {
        holds = eval_predicate(*ps.layers[l].rely, t.before, t.after);
      } catch (const EvalError&) {
        holds = false;
      }
      if (!holds) first_violation[l] = static_cast<int>(i);
    }
  }
  LayerScan out;
  for (size_t l = 0; l < nl; ++l)
    if (first_violation[l] < 0) {
      out.active = static_cast<int>(l);
      return out;
    }
  out.broken_at = *std::max_element(first_violation.begin(),
                                    first_violation.end());
  return out;
}

Verdict eval_verdict(const ExprPtr& pred, const State& before,
                     const State& after) {
  try {
    return eval_predicate(*pred, before, after) ? Verdict::Pass
                                                : Verdict::Fail;
  } catch (const EvalError&) {
    return Verdict::EvalFault;
  }
}

void add_flag(std::vector<TraceFlag>& flags, TraceFlag f) {
  if (std::find(flags.begin(), flags.end(), f) == flags.end())
    flags.push_back(f);
}

}  // namespace

int active_layer(const Trace& trace, const SystemSpec& sys,
                 const std::string& pid) {
  int p = sys.process_index(pid);
  if (p < 0) throw std::invalid_argument("unknown process '" + pid + "'");
  return scan_layers(trace, sys.processes[p], p).active;
}

LivelockFlag detect_livelock(const Trace& trace) {
  if (!trace.step_cap_hit) return LivelockFlag::None;
  std::unordered_set<uint64_t> seen;
  std::vector<const std::vector<int64_t>*> bucket;
  for (const auto& c : trace.configs) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (int64_t x : c) h = hash_mix(h, static_cast<uint64_t>(x));
    if (!seen.insert(h).second) {
      // hash collision is possible; confirm by value
      for (const auto* prev : bucket)
        if (*prev == c) return LivelockFlag::Livelock;
    }
    bucket.push_back(&c);
  }
  // full quadratic confirmation only if hashes repeated but values did not
  for (size_t i = 0; i < trace.configs.size(); ++i)
    for (size_t j = i + 1; j < trace.configs.size(); ++j)
      if (trace.configs[i] == trace.configs[j]) return LivelockFlag::Livelock;
  return LivelockFlag::StepBoundHit;
}

TraceReport check_trace(const Trace& trace, const SystemSpec& sys,
                        const CheckOptions& opts) {
  // Declaration identity: the trace must come from this system.
  if (trace.initial.decl && trace.initial.decl->vars.size() !=
                                sys.decl.vars.size())
    throw std::invalid_argument("trace/system declaration mismatch");
  int np = static_cast<int>(sys.processes.size());

  TraceReport rep;
  rep.processes.resize(np);

  std::vector<LayerScan> scans(np);
  std::vector<bool> pre_ok(np, true);
  for (int p = 0; p < np; ++p) {
    const ProcessSpec& ps = sys.processes[p];
    scans[p] = scan_layers(trace, ps, p);
    ProcessReport& pr = rep.processes[p];
    pr.pid = ps.id;
    pr.active_layer = scans[p].active;
    pr.rely_broken_at = scans[p].broken_at;
    try {
      pre_ok[p] = eval_state_predicate(*ps.pre, trace.initial);
      pr.pre = pre_ok[p] ? Verdict::Pass : Verdict::Fail;
    } catch (const EvalError&) {
      pr.pre = Verdict::EvalFault;
      pre_ok[p] = false;
    }
    if (!pre_ok[p]) add_flag(rep.flags, TraceFlag::PreRejected);
    if (scans[p].active == kRelyBroken) add_flag(rep.flags, TraceFlag::RelyBroken);
  }

  // Per-transition verdicts. A process owes its guarantee only while its
  // precondition held and its rely is unbroken (contract reading); the
  // strict option keeps checking for diagnostics.
  for (size_t i = 0; i < trace.transitions.size(); ++i) {
    const Transition& t = trace.transitions[i];
    TransitionVerdict tv;
    tv.index = static_cast<int>(i);
    tv.rely.assign(np, Verdict::Skipped);

    if (t.kind == TransitionKind::Injection) {
      int ii = t.actor - np;
      const InjectorSpec& inj = sys.injectors[ii];
      tv.guarantee = eval_verdict(inj.guarantee, t.before, t.after);
      if (tv.guarantee != Verdict::Pass) tv.guarantee_span = inj.guarantee->span;
    } else {
      int p = t.actor;
      const ProcessSpec& ps = sys.processes[p];
      bool owed = pre_ok[p] &&
                  (scans[p].active != kRelyBroken ||
                   static_cast<int>(i) <= scans[p].broken_at);
      int layer = scans[p].active == kRelyBroken
                      ? static_cast<int>(ps.layers.size()) - 1
                      : scans[p].active;
      if (owed || opts.strict_after_broken_rely) {
        tv.guarantee =
            eval_verdict(ps.layers[layer].guarantee, t.before, t.after);
        if (tv.guarantee != Verdict::Pass)
          tv.guarantee_span = ps.layers[layer].guarantee->span;
      } else {
        tv.guarantee = Verdict::Vacuous;
      }
    }
    if (tv.guarantee == Verdict::Fail)
      add_flag(rep.flags, TraceFlag::GuaranteeBroken);
    if (tv.guarantee == Verdict::EvalFault)
      add_flag(rep.flags, TraceFlag::Faulted);

    for (int p = 0; p < np; ++p) {
      if (!is_env_for(t, p)) continue;
      const ProcessSpec& ps = sys.processes[p];
      int layer = scans[p].active == kRelyBroken
                      ? static_cast<int>(ps.layers.size()) - 1
                      : scans[p].active;
      tv.rely[p] = eval_verdict(ps.layers[layer].rely, t.before, t.after);
      if (tv.rely[p] == Verdict::Fail && !tv.rely_span.valid())
        tv.rely_span = ps.layers[layer].rely->span;
    }
    rep.transitions.push_back(std::move(tv));
  }

  // Postconditions at each process's termination state.
  for (int p = 0; p < np; ++p) {
    const ProcessSpec& ps = sys.processes[p];
    ProcessReport& pr = rep.processes[p];
    if (trace.status.empty() ||
        trace.status[p] != ActorStatus::Terminated) {
      pr.post = Verdict::Skipped;
      continue;
    }
    if (!pre_ok[p]) {
      pr.post = Verdict::Vacuous;
      continue;
    }
    if (scans[p].active == kRelyBroken && !opts.strict_after_broken_rely) {
      pr.post = Verdict::Vacuous;
      continue;
    }
    int layer = scans[p].active == kRelyBroken
                    ? static_cast<int>(ps.layers.size()) - 1
                    : scans[p].active;
    const State& at = trace.termination_index[p] >= 0
                          ? trace.transitions[trace.termination_index[p]].after
                          : trace.initial;
    try {
      pr.post = eval_state_predicate(*ps.post_of(layer), at) ? Verdict::Pass
                                                             : Verdict::Fail;
    } catch (const EvalError&) {
      pr.post = Verdict::EvalFault;
    }
    if (pr.post == Verdict::Fail) add_flag(rep.flags, TraceFlag::PostFailed);
    if (pr.post == Verdict::EvalFault) add_flag(rep.flags, TraceFlag::Faulted);
  }

  if (trace.fault) add_flag(rep.flags, TraceFlag::Faulted);
  switch (detect_livelock(trace)) {
    case LivelockFlag::Livelock: add_flag(rep.flags, TraceFlag::Livelock); break;
    case LivelockFlag::StepBoundHit:
      add_flag(rep.flags, TraceFlag::StepBoundHit);
      break;
    case LivelockFlag::None: break;
  }
  if (rep.flags.empty()) rep.flags.push_back(TraceFlag::AllPass);
  std::sort(rep.flags.begin(), rep.flags.end(),
            [](TraceFlag a, TraceFlag b) { return static_cast<int>(a) < static_cast<int>(b); });
  return rep;
}

// ---------------------------------------------------------------------------
// Whole-system verification

namespace {

bool failing(const TraceReport& r) {
  return r.has_flag(TraceFlag::GuaranteeBroken) ||
         r.has_flag(TraceFlag::PostFailed) ||
         r.has_flag(TraceFlag::Faulted) || r.has_flag(TraceFlag::Livelock);
}

std::string flags_str(const TraceReport& r) {
  std::string s;
  for (auto f : r.flags) {
    if (!s.empty()) s += ",";
    s += flag_str(f);
  }
  return s;
}

// Exhaustive strategy over the configuration graph. Per-path facts are
// reduced to per-edge facts plus a fixpoint over "survivor masks": for each
// (config, process), the set of layer-subsets that can still hold along
// some path into the config. Exact for the trace tree as long as a post-
// termination environment step cannot raise a process's layer after its
// post was owed (the shipped corpus gates injections accordingly; a note is
// emitted when that situation is even possible).
struct GraphChecker {
  const SystemSpec& sys;
  const ConfigGraph& g;
  const CheckOptions& copts;
  SystemReport& rep;
  int np;

  // survivors[config][process]: bitset over layer-subsets (mask of masks).
  std::vector<std::vector<uint64_t>> survivors;
  std::vector<std::vector<uint64_t>> edge_admit;  // [edge][process]: layer mask
  std::vector<std::vector<int>> out_edges;

  GraphChecker(const SystemSpec& s, const ConfigGraph& graph,
               const CheckOptions& c, SystemReport& r)
      : sys(s), g(graph), copts(c), rep(r),
        np(static_cast<int>(s.processes.size())) {}

  uint64_t admit_mask(const GraphEdge& e, int p) {
    const auto& layers = sys.processes[p].layers;
    uint64_t m = 0;
    for (size_t l = 0; l < layers.size(); ++l) {
      bool holds = false;
      try {
        holds = eval_predicate(*layers[l].rely, g.states[e.from],
                               g.states[e.to]);
      } catch (const EvalError&) {
        holds = false;
      }
      if (holds) m |= uint64_t{1} << l;
    }
    return m;
  }

  void fail_edge(int eid, const std::string& why) {
    if (rep.counterexample) return;
    auto path = g.path_to(g.edges[eid].from);
    path.push_back(eid);
    Counterexample cex;
    cex.trace = g.path_trace(path, g.edges[eid].to);
    cex.trace.status.assign(cex.trace.actor_ids.size(), ActorStatus::Running);
    cex.report = check_trace(cex.trace, sys, copts);
    cex.summary = why;
    rep.counterexample = std::move(cex);
    rep.verdict = SystemVerdict::Fail;
  }

  void run() {
    // Fixpoint over survivor masks.
    size_t nc = g.configs.size();
    survivors.assign(nc, std::vector<uint64_t>(np, 0));
    edge_admit.assign(g.edges.size(), {});
    out_edges.assign(nc, {});
    for (size_t e = 0; e < g.edges.size(); ++e)
      out_edges[g.edges[e].from].push_back(static_cast<int>(e));

    std::vector<char> queued(nc, 0);
    std::vector<int> worklist;
    for (int c0 : g.initial_configs) {
      for (int p = 0; p < np; ++p) {
        uint64_t full =
            (uint64_t{1} << sys.processes[p].layers.size()) - 1;
        survivors[c0][p] |= uint64_t{1} << full;
      }
      if (!queued[c0]) {
        queued[c0] = 1;
        worklist.push_back(c0);
      }
    }
    while (!worklist.empty()) {
      int c = worklist.back();
      worklist.pop_back();
      queued[c] = 0;
      for (int eid : out_edges[c]) {
        const GraphEdge& e = g.edges[eid];
        bool changed = false;
        for (int p = 0; p < np; ++p) {
          uint64_t in = survivors[c][p];
          uint64_t out = 0;
          if (e.actor == p && e.kind == TransitionKind::ProcessStep) {
            out = in;  // own step: layers unaffected
          } else {
            if (edge_admit[eid].empty()) edge_admit[eid].assign(np, ~uint64_t{0});
            if (edge_admit[eid][p] == ~uint64_t{0})
              edge_admit[eid][p] = admit_mask(e, p);
            uint64_t admit = edge_admit[eid][p];
            for (int m = 0; m < 64; ++m)
              if (in & (uint64_t{1} << m))
                out |= uint64_t{1} << (static_cast<uint64_t>(m) & admit);
          }
          uint64_t merged = survivors[e.to][p] | out;
          if (merged != survivors[e.to][p]) {
            survivors[e.to][p] = merged;
            changed = true;
          }
        }
        if (changed && !queued[e.to]) {
          queued[e.to] = 1;
          worklist.push_back(e.to);
        }
      }
    }

    check_edges();
    check_posts();
    check_livelock();

    for (const auto& f : g.faults) {
      auto path = g.path_to(f.config);
      if (!rep.counterexample) {
        Counterexample cex;
        cex.trace = g.path_trace(path, f.config);
        cex.trace.fault = TraceFault{f.span, f.message, f.actor};
        cex.report = check_trace(cex.trace, sys, copts);
        cex.summary = "evaluation fault: " + f.message;
        rep.counterexample = std::move(cex);
      }
      rep.verdict = SystemVerdict::Fail;
    }
  }

  void check_edges() {
    for (size_t eid = 0; eid < g.edges.size(); ++eid) {
      const GraphEdge& e = g.edges[eid];
      const State& before = g.states[e.from];
      const State& after = g.states[e.to];
      if (e.kind == TransitionKind::Injection) {
        const InjectorSpec& inj = sys.injectors[e.actor - np];
        Verdict v = eval_verdict(inj.guarantee, before, after);
        if (v != Verdict::Pass)
          fail_edge(static_cast<int>(eid), "injector '" + inj.id +
                                               "' guarantee violated");
        continue;
      }
      int p = e.actor;
      const auto& layers = sys.processes[p].layers;
      // Owed guarantees: lowest layer of every reachable survivor mask.
      uint64_t owed = 0;
      for (int m = 0; m < 64; ++m)
        if (survivors[e.from][p] & (uint64_t{1} << m))
          if (m != 0) owed |= uint64_t{1} << __builtin_ctz(m);
      for (size_t l = 0; l < layers.size(); ++l) {
        if (!(owed & (uint64_t{1} << l))) continue;
        Verdict v = eval_verdict(layers[l].guarantee, before, after);
        if (v != Verdict::Pass)
          fail_edge(static_cast<int>(eid),
                    "process '" + sys.processes[p].id + "' guarantee (layer " +
                        std::to_string(l) + ") violated");
      }
    }
  }

  void check_posts() {
    for (size_t eid = 0; eid < g.edges.size(); ++eid) {
      const GraphEdge& e = g.edges[eid];
      if (e.kind != TransitionKind::ProcessStep) continue;
      int p = e.actor;
      int halt_before = static_cast<int>(g.configs[e.from][p]);
      int halt_after = static_cast<int>(g.configs[e.to][p]);
      // Heuristic-free halt detection: the actor's ip is slot p of the
      // packed config, and a process's halt ip never moves again.
      if (halt_before == halt_after) continue;
      Executor probe(sys, g.states[e.to]);
      probe.restore(g.configs[e.to]);
      if (!probe.process_terminated(p)) continue;
      const auto& ps = sys.processes[p];
      for (int m = 0; m < 64; ++m) {
        if (!(survivors[e.to][p] & (uint64_t{1} << m))) continue;
        if (m == 0) continue;  // rely broken: nothing owed
        int l = __builtin_ctz(m);
        Verdict v;
        try {
          v = eval_state_predicate(*ps.post_of(l), g.states[e.to])
                  ? Verdict::Pass
                  : Verdict::Fail;
        } catch (const EvalError&) {
          v = Verdict::EvalFault;
        }
        if (v != Verdict::Pass)
          fail_edge(static_cast<int>(eid),
                    "process '" + ps.id + "' postcondition (layer " +
                        std::to_string(l) + ") fails at termination");
      }
    }
  }

  void check_livelock() {
    if (!g.complete) return;  // only judged on a fully explored graph
    size_t nc = g.configs.size();
    // Backward reachability from terminal configurations.
    std::vector<std::vector<int>> rev(nc);
    for (size_t e = 0; e < g.edges.size(); ++e)
      rev[g.edges[e].to].push_back(g.edges[e].from);
    std::vector<char> reaches(nc, 0);
    std::vector<int> stack;
    for (int t : g.terminal_configs) {
      if (!reaches[t]) {
        reaches[t] = 1;
        stack.push_back(t);
      }
    }
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      for (int pre : rev[c])
        if (!reaches[pre]) {
          reaches[pre] = 1;
          stack.push_back(pre);
        }
    }
    int doomed = -1;
    for (size_t c = 0; c < nc; ++c)
      if (!reaches[c]) {
        doomed = static_cast<int>(c);
        break;
      }
    if (doomed >= 0) {
      rep.livelock_found = true;
      rep.verdict = SystemVerdict::Fail;
      if (!rep.counterexample) {
        // Prefix to the doomed region plus one cycle inside it.
        auto path = g.path_to(doomed);
        auto cycle = find_cycle(doomed, reaches);
        path.insert(path.end(), cycle.begin(), cycle.end());
        int tail = path.empty() ? doomed : g.edges[path.back()].to;
        Counterexample cex;
        cex.trace = g.path_trace(path, tail);
        cex.trace.step_cap_hit = true;  // divergence: mark as non-terminating
        cex.report = check_trace(cex.trace, sys, copts);
        cex.summary =
            "livelock: termination unreachable, configuration repeats";
        rep.counterexample = std::move(cex);
      }
    }
    // Escapable cycles (possible divergence under unfair schedules) are
    // only noted.
    if (has_cycle()) rep.escapable_cycles = true;
  }

  std::vector<int> find_cycle(int start, const std::vector<char>& reaches) {
    // Walk first-available edges within the doomed region until a config
    // repeats; every doomed config has an outgoing edge into the region.
    std::vector<int> path;
    std::unordered_map<int, size_t> at;
    int c = start;
    while (true) {
      auto it = at.find(c);
      if (it != at.end()) {
        return std::vector<int>(path.begin(), path.end());
      }
      at[c] = path.size();
      bool moved = false;
      for (int eid : out_edges[c]) {
        if (!reaches[g.edges[eid].to]) {
          path.push_back(eid);
          c = g.edges[eid].to;
          moved = true;
          break;
        }
      }
      if (!moved) return path;  // defensive: dead end (should not happen)
    }
  }

  bool has_cycle() {
    size_t nc = g.configs.size();
    std::vector<uint8_t> color(nc, 0);
    std::vector<std::pair<int, size_t>> stack;
    for (size_t root = 0; root < nc; ++root) {
      if (color[root]) continue;
      stack.push_back({static_cast<int>(root), 0});
      color[root] = 1;
      while (!stack.empty()) {
        auto& [c, i] = stack.back();
        if (i < out_edges[c].size()) {
          int to = g.edges[out_edges[c][i++]].to;
          if (color[to] == 1) return true;
          if (color[to] == 0) {
            color[to] = 1;
            stack.push_back({to, 0});
          }
        } else {
          color[c] = 2;
          stack.pop_back();
        }
      }
    }
    return false;
  }
};

}  // namespace

SystemReport verify_system(const SystemSpec& sys, const Strategy& strategy,
                           const std::vector<State>& initials,
                           const VerifyOptions& opts) {
  SystemReport rep;
  rep.initials_total = initials.size();

  std::vector<State> accepted;
  for (const auto& init : initials) {
    bool ok = true;
    for (const auto& p : sys.processes) {
      try {
        if (!eval_state_predicate(*p.pre, init)) ok = false;
      } catch (const EvalError&) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) accepted.push_back(init);
    else ++rep.initials_rejected;
  }

  if (strategy.kind == StrategyKind::Exhaustive) {
    ConfigGraph g = explore(sys, accepted, strategy.depth,
                            opts.budget_override, opts.explore_caps);
    rep.configs = g.configs.size();
    rep.edges = g.edges.size();
    rep.terminals = g.terminal_configs.size();
    rep.complete = g.complete;
    if (!g.complete)
      rep.notes.push_back(g.depth_truncated
                              ? "exploration truncated at depth bound"
                              : "exploration truncated by config/edge cap");
    // Post-termination injections would let a layer rise after a post was
    // owed; flag it so the literal trace checker can be consulted.
    {
      Executor probe(sys, accepted.empty() ? State::lowest(sys.decl)
                                           : accepted.front());
      for (const auto& e : g.edges) {
        if (e.kind != TransitionKind::Injection) continue;
        probe.restore(g.configs[e.from]);
        if (probe.all_processes_terminated()) {
          rep.notes.push_back(
              "injection after process termination exists; per-trace "
              "reports are authoritative for active layers");
          break;
        }
      }
    }
    GraphChecker checker(sys, g, opts.check, rep);
    checker.run();
    if (rep.verdict == SystemVerdict::Pass && !rep.complete)
      rep.verdict = SystemVerdict::Incomplete;
    return rep;
  }

  // Scheduled strategies.
  for (const auto& init : accepted) {
    int runs = strategy.kind == StrategyKind::RoundRobin ? 1 : strategy.runs;
    for (int r = 0; r < runs; ++r) {
      SchedulerSpec sched;
      if (strategy.kind == StrategyKind::RoundRobin) {
        sched.kind = SchedulerKind::RoundRobin;
      } else {
        sched.kind = SchedulerKind::Random;
        sched.seed = strategy.seed + static_cast<uint64_t>(r);
        sched.injector_weight = strategy.injector_weight;
      }
      Trace t = run(sys, sched, init, strategy.step_cap, opts.budget_override);
      TraceReport tr = check_trace(t, sys, opts.check);
      ++rep.traces_checked;
      if (failing(tr)) {
        rep.verdict = SystemVerdict::Fail;
        if (!rep.counterexample)
          rep.counterexample =
              Counterexample{std::move(t), std::move(tr),
                             "trace flags: " + flags_str(tr)};
        return rep;
      }
      if (tr.has_flag(TraceFlag::StepBoundHit)) {
        rep.complete = false;
        if (rep.notes.empty())
          rep.notes.push_back("a run hit the step cap; posts unchecked there");
      }
    }
  }
  if (rep.verdict == SystemVerdict::Pass && !rep.complete)
    rep.verdict = SystemVerdict::Incomplete;
  return rep;
}

std::string serialize_report(const TraceReport& r, const Trace& t,
                             const SystemSpec& sys) {
  std::ostringstream os;
  os << "report v1\n";
  os << "flags ";
  for (size_t i = 0; i < r.flags.size(); ++i)
    os << (i ? "," : "") << flag_str(r.flags[i]);
  os << "\n";
  for (const auto& pr : r.processes) {
    os << "process " << pr.pid << " pre=" << verdict_str(pr.pre)
       << " post=" << verdict_str(pr.post) << " layer=";
    if (pr.active_layer == kRelyBroken) os << "RELY_BROKEN";
    else os << pr.active_layer;
    if (pr.rely_broken_at >= 0) os << " rely_broken_at=" << pr.rely_broken_at;
    os << "\n";
  }
  os << "transitions " << r.transitions.size() << "\n";
  for (const auto& tv : r.transitions) {
    bool interesting = tv.guarantee == Verdict::Fail ||
                       tv.guarantee == Verdict::EvalFault;
    for (auto v : tv.rely)
      if (v == Verdict::Fail || v == Verdict::EvalFault) interesting = true;
    if (!interesting) continue;
    const Transition& tr = t.transitions[tv.index];
    os << "violation at " << tv.index << " actor=" << tr.actor_id
       << " guarantee=" << verdict_str(tv.guarantee);
    if (tv.guarantee_span.valid()) os << " at " << tv.guarantee_span.str();
    for (size_t p = 0; p < tv.rely.size(); ++p)
      if (tv.rely[p] == Verdict::Fail || tv.rely[p] == Verdict::EvalFault)
        os << " rely[" << sys.processes[p].id
           << "]=" << verdict_str(tv.rely[p]);
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

}  // namespace rgspec
