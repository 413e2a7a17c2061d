#ifndef RGSPEC_CHECKER_HPP_
#define RGSPEC_CHECKER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "rgspec/runtime.hpp"

namespace rgspec {

enum class Verdict : uint8_t { Pass, Fail, Vacuous, Skipped, EvalFault };

const char* verdict_str(Verdict v);

// Sentinel for "no layer's rely survived the whole trace".
inline constexpr int kRelyBroken = -1;

struct TransitionVerdict {
  int index = 0;
  Verdict guarantee = Verdict::Pass;      // the acting process / injector
  SourceSpan guarantee_span;              // violated predicate, when failing
  std::vector<Verdict> rely;              // per process; Skipped for the actor
  SourceSpan rely_span;
};

enum class TraceFlag : uint8_t {
  AllPass,
  RelyBroken,
  GuaranteeBroken,
  PostFailed,
  PreRejected,
  Livelock,
  StepBoundHit,
  Faulted,
};

const char* flag_str(TraceFlag f);

struct ProcessReport {
  std::string pid;
  Verdict pre = Verdict::Pass;
  Verdict post = Verdict::Skipped;        // Skipped when never terminated
  int active_layer = 0;                   // kRelyBroken when none held
  int rely_broken_at = -1;                // transition index, if broken
};

struct TraceReport {
  std::vector<TransitionVerdict> transitions;
  std::vector<ProcessReport> processes;
  std::vector<TraceFlag> flags;           // sorted, deduplicated
  bool all_pass() const;
  bool has_flag(TraceFlag f) const;
};

struct CheckOptions {
  // Keep evaluating a process's guarantee/post after its rely broke
  // (diagnostics mode); contract reading marks them Vacuous instead.
  bool strict_after_broken_rely = false;
};

// Verifies one trace against the system: per-transition guarantee and rely
// verdicts at the active layer, pre at the initial state, post at each
// process's termination state. Pure function of (trace, sys, opts).
TraceReport check_trace(const Trace& trace, const SystemSpec& sys,
                        const CheckOptions& opts = {});

// Smallest layer index whose rely held on every environment transition of
// the trace relative to pid; kRelyBroken if none did.
int active_layer(const Trace& trace, const SystemSpec& sys,
                 const std::string& pid);

// Core of active_layer, shared with property tests: smallest layer whose
// rely admits every pair in `env_pairs`.
int layer_for_env_pairs(const std::vector<ConditionLayer>& layers,
                        const std::vector<StatePair>& env_pairs);

enum class LivelockFlag : uint8_t { None, StepBoundHit, Livelock };

// A trace that hit its step cap with a repeated (control, state, budget)
// configuration is a proven cycle; a cap hit without repetition is only
// StepBoundHit.
LivelockFlag detect_livelock(const Trace& trace);

// ---------------------------------------------------------------------------
// Whole-system verification

enum class StrategyKind : uint8_t { Exhaustive, Random, RoundRobin };

struct Strategy {
  StrategyKind kind = StrategyKind::Exhaustive;
  int depth = 400;               // exhaustive: graph depth bound
  int step_cap = 10'000;         // scheduled runs
  int runs = 100;                // random: runs per initial state
  uint64_t seed = 1;
  double injector_weight = 0.25;
};

enum class SystemVerdict : uint8_t { Pass, Fail, Incomplete };

struct Counterexample {
  Trace trace;
  TraceReport report;
  std::string summary;
};

struct SystemReport {
  SystemVerdict verdict = SystemVerdict::Pass;
  uint64_t initials_total = 0;
  uint64_t initials_rejected = 0;   // some process precondition false
  uint64_t traces_checked = 0;      // scheduled strategies
  uint64_t configs = 0;             // exhaustive strategy
  uint64_t edges = 0;
  uint64_t terminals = 0;
  bool complete = true;
  bool livelock_found = false;
  // Escapable cycles (some schedule diverges but progress stays reachable)
  // are reported, not failed: they are unfair-schedule artifacts.
  bool escapable_cycles = false;
  std::optional<Counterexample> counterexample;
  std::vector<std::string> notes;
};

struct VerifyOptions {
  std::vector<int> budget_override;
  CheckOptions check;
  uint64_t state_cap = kDefaultStateCap;
  ExploreCaps explore_caps;
};

// Runs or enumerates traces from every given initial state, checks each,
// and aggregates. PASS iff every trace whose preconditions and relies held
// passes its guarantees and posts, and no inevitable livelock exists.
SystemReport verify_system(const SystemSpec& sys, const Strategy& strategy,
                           const std::vector<State>& initials,
                           const VerifyOptions& opts = {});

std::string serialize_report(const TraceReport& r, const Trace& t,
                             const SystemSpec& sys);

}  // namespace rgspec

#endif  // RGSPEC_CHECKER_HPP_
