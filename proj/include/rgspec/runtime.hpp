#ifndef RGSPEC_RUNTIME_HPP_
#define RGSPEC_RUNTIME_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rgspec/spec_model.hpp"

namespace rgspec {

enum class TransitionKind : uint8_t { ProcessStep, Injection };

struct Transition {
  int actor = 0;                 // index into Executor::actor_ids()
  std::string actor_id;
  TransitionKind kind = TransitionKind::ProcessStep;
  State before;
  State after;
  SourceSpan span;               // executed atomic unit
  std::vector<int> changed;      // variable indices, declaration order
};

enum class ActorStatus : uint8_t { Running, Terminated, StepBoundHit, Blocked };

struct TraceFault {
  SourceSpan span;
  std::string message;
  int actor = -1;
};

struct Trace {
  State initial;
  std::vector<Transition> transitions;
  std::vector<std::string> actor_ids;        // processes then injectors
  std::vector<ActorStatus> status;           // per actor
  std::vector<int> injections_fired;         // per injector
  std::vector<int> termination_index;        // per process: index of its last
                                             // transition, -1 if never ran,
                                             // only meaningful if Terminated
  // Packed (control, state, budget) snapshots: [0] before any transition,
  // [i+1] after transition i. Livelock detection keys on these.
  std::vector<std::vector<int64_t>> configs;
  std::optional<TraceFault> fault;
  bool step_cap_hit = false;
};

// Stable line-delimited form, documented in docs/trace-format.md.
std::string serialize_trace(const Trace& t);

enum class SchedulerKind : uint8_t { RoundRobin, Random };

struct SchedulerSpec {
  SchedulerKind kind = SchedulerKind::RoundRobin;
  uint64_t seed = 0;             // Random
  double injector_weight = 0.25; // Random: chance an enabled injector fires
};

// Small-step execution of one system from one initial state. Processes are
// actors 0..P-1, injectors P..P+I-1. One step executes exactly one atomic
// unit of one actor.
class Executor {
 public:
  Executor(const SystemSpec& sys, State initial,
           const std::vector<int>& budget_override = {});

  struct StepOutcome {
    enum class Kind { Stepped, Terminated, NotEnabled, Faulted } kind;
    std::optional<Transition> transition;
  };

  int actor_count() const;
  int process_count() const;
  bool process_terminated(int p) const;
  bool all_processes_terminated() const;
  // An injector is runnable when its enabling predicate holds, budget
  // remains, and (for redo bodies) a process delta has been observed.
  bool actor_runnable(int actor) const;
  bool any_runnable() const;

  StepOutcome step(int actor);

  const State& state() const { return state_; }
  const std::vector<int>& ips() const { return ips_; }
  const std::vector<int>& budgets_left() const { return budgets_; }
  const std::vector<std::string>& actor_ids() const { return actor_ids_; }
  const std::optional<TraceFault>& fault() const { return fault_; }

  // Packed (ips, state, budgets, redo deltas) snapshot: the configuration
  // the explorers deduplicate on.
  std::vector<int64_t> config() const;
  void restore(const std::vector<int64_t>& config);

 private:
  StepOutcome exec_unit(int actor, const CompiledProgram& prog, int& ip,
                        TransitionKind kind);
  bool assign(int var, const Expr& rhs, const SourceSpan& span,
              std::vector<int>& changed);

  const SystemSpec* sys_;
  std::vector<CompiledProgram> progs_;       // processes then injector bodies
  std::vector<std::string> actor_ids_;
  State state_;
  std::vector<int> ips_;                     // per actor
  std::vector<int> budgets_;                 // per injector
  std::vector<int64_t> last_delta_;          // per int var, from process steps
  std::vector<uint8_t> has_delta_;
  std::optional<TraceFault> fault_;
};

// Interleaves actors per the scheduler until no actor is runnable or
// step_cap is hit. Deterministic in (sys, sched, initial, step_cap).
Trace run(const SystemSpec& sys, const SchedulerSpec& sched,
          const State& initial, int step_cap,
          const std::vector<int>& budget_override = {});

struct EnumerateCaps {
  int max_traces = 2'000'000;
  long long max_nodes = 50'000'000;
};

struct EnumerateResult {
  std::vector<Trace> traces;     // complete runs or depth-bounded prefixes
  bool cap_exceeded = false;
};

// Every distinct actor-choice sequence up to `depth` units, including every
// injector firing choice within budget. Intended for small scopes; the
// configuration-graph explorer below is the scalable path.
EnumerateResult enumerate_traces(const SystemSpec& sys, const State& initial,
                                 int depth,
                                 const std::vector<int>& budget_override = {},
                                 const EnumerateCaps& caps = {});

// Configuration-graph exploration: breadth-first over deduplicated
// (control, state, budget) configurations. Sound and complete for
// transition-local and terminal-state properties of the interleaving tree.
struct GraphEdge {
  int from = 0, to = 0;
  int actor = 0;
  TransitionKind kind = TransitionKind::ProcessStep;
  SourceSpan span;
  std::vector<int> changed;
};

struct GraphFault {
  int config = 0;
  int actor = 0;
  SourceSpan span;
  std::string message;
};

struct ConfigGraph {
  const SystemSpec* sys = nullptr;
  std::vector<std::vector<int64_t>> configs;   // packed, discovery order
  std::vector<State> states;                   // per config
  std::vector<int> depth;                      // BFS depth per config
  std::vector<GraphEdge> edges;
  std::vector<int> parent_edge;                // per config, -1 for initials
  std::vector<int> initial_configs;
  std::vector<int> terminal_configs;           // no runnable actor
  std::vector<GraphFault> faults;
  bool complete = false;                       // frontier fully explored
  bool depth_truncated = false;

  // Shortest path of edges from an initial config to `config`.
  std::vector<int> path_to(int config) const;
  Trace path_trace(const std::vector<int>& edge_path, int tail_config) const;
};

struct ExploreCaps {
  int max_configs = 2'000'000;
  long long max_edges = 8'000'000;
};

ConfigGraph explore(const SystemSpec& sys, const std::vector<State>& initials,
                    int depth,
                    const std::vector<int>& budget_override = {},
                    const ExploreCaps& caps = {});

// Fault-model constructor templates. The binding constraint is always the
// returned guarantee predicate; the body is one concrete realization.
InjectorSpec make_injector(FaultKind kind, const std::string& target_var,
                           const StateDecl& decl, int budget);

// All states satisfying the init constraint (and `extra`, if given), in
// enumeration order. Empty optional when the state space exceeds the cap.
std::optional<std::vector<State>> initial_states(
    const SystemSpec& sys, const ExprPtr& extra = nullptr,
    uint64_t state_cap = kDefaultStateCap);

}  // namespace rgspec

#endif  // RGSPEC_RUNTIME_HPP_
