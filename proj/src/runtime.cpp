#include "rgspec/runtime.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>
#include <unordered_map>

#include "rgspec/eval.hpp"

namespace rgspec {

namespace {

constexpr int kUnitBudget = 200'000;  // instructions per atomic unit

// Injector bodies run whole-body-atomically: one firing, one transition.
CompiledProgram compile_injector_body(const InjectorSpec& inj,
                                      const StateDecl& decl) {
  auto wrap = std::make_shared<Stmt>();
  wrap->kind = StmtKind::Atomic;
  wrap->span = inj.span;
  wrap->body = inj.body.stmts;
  Program p;
  p.stmts.push_back(wrap);
  return compile(p, decl, Atomicity::Statement);
}

}  // namespace

Executor::Executor(const SystemSpec& sys, State initial,
                   const std::vector<int>& budget_override)
    : sys_(&sys), state_(std::move(initial)) {
  for (const auto& p : sys.processes) {
    progs_.push_back(compile(p.body, sys.decl, sys.atomicity));
    actor_ids_.push_back(p.id);
  }
  for (size_t i = 0; i < sys.injectors.size(); ++i) {
    progs_.push_back(compile_injector_body(sys.injectors[i], sys.decl));
    actor_ids_.push_back(sys.injectors[i].id);
    budgets_.push_back(i < budget_override.size() ? budget_override[i]
                                                  : sys.injectors[i].budget);
  }
  ips_.assign(progs_.size(), 0);
  // Processes with empty bodies are terminated from the start.
  for (size_t a = 0; a < progs_.size(); ++a)
    if (progs_[a].instrs.empty()) ips_[a] = progs_[a].halt_ip();
  last_delta_.assign(sys.decl.vars.size(), 0);
  has_delta_.assign(sys.decl.vars.size(), 0);
}

int Executor::actor_count() const { return static_cast<int>(progs_.size()); }

int Executor::process_count() const {
  return static_cast<int>(sys_->processes.size());
}

bool Executor::process_terminated(int p) const {
  return ips_[p] >= progs_[p].halt_ip();
}

bool Executor::all_processes_terminated() const {
  for (int p = 0; p < process_count(); ++p)
    if (!process_terminated(p)) return false;
  return true;
}

bool Executor::actor_runnable(int actor) const {
  if (fault_) return false;
  if (actor < process_count()) return !process_terminated(actor);
  int ii = actor - process_count();
  if (budgets_[ii] <= 0) return false;
  const InjectorSpec& inj = sys_->injectors[ii];
  // A replaying body needs an observed process delta for all its targets.
  for (const auto& in : progs_[actor].instrs)
    if (in.op == Op::Redo && !has_delta_[in.var]) return false;
  try {
    return eval_state_predicate(*inj.enabling, state_);
  } catch (const EvalError& e) {
    const_cast<Executor*>(this)->fault_ =
        TraceFault{e.span, std::string("enabling predicate faulted: ") +
                               e.what(), actor};
    return false;
  }
}

bool Executor::any_runnable() const {
  for (int a = 0; a < actor_count(); ++a)
    if (actor_runnable(a)) return true;
  return false;
}

bool Executor::assign(int var, const Expr& rhs, const SourceSpan& span,
                      std::vector<int>& changed) {
  Value v;
  try {
    v = eval_expr_single(rhs, state_);
  } catch (const EvalError& e) {
    fault_ = TraceFault{e.span, e.what(), -1};
    return false;
  }
  const VarDom& dom = sys_->decl.vars[var];
  if (!dom.contains(v)) {
    fault_ = TraceFault{span, "assignment to '" + dom.name +
                                  "' out of range: " + sys_->decl.value_str(v),
                        -1};
    return false;
  }
  changed.push_back(var);
  state_.vals[var] = v;
  return true;
}

Executor::StepOutcome Executor::exec_unit(int actor,
                                          const CompiledProgram& prog, int& ip,
                                          TransitionKind kind) {
  State before = state_;
  std::vector<int> assigned;
  int halt = prog.halt_ip();
  int entered_group = ip < halt ? prog.instrs[ip].group : -1;
  bool whole_body = kind == TransitionKind::Injection;
  int steps = 0;

  while (ip < halt) {
    const Instr& in = prog.instrs[ip];
    if (!whole_body && entered_group >= 0 && in.group != entered_group) break;
    if (++steps > kUnitBudget) {
      fault_ = TraceFault{in.span, "atomic unit exceeded its step budget",
                          actor};
      break;
    }
    switch (in.op) {
      case Op::Assign: {
        int64_t old_val = state_.vals[in.var].num;
        if (!assign(in.var, *in.expr, in.span, assigned)) goto done;
        if (kind == TransitionKind::ProcessStep &&
            sys_->decl.vars[in.var].ty == Ty::Int) {
          last_delta_[in.var] = state_.vals[in.var].num - old_val;
          has_delta_[in.var] = 1;
        }
        ++ip;
        break;
      }
      case Op::Branch: {
        bool b = false;
        try {
          b = eval_state_predicate(*in.expr, state_);
        } catch (const EvalError& e) {
          fault_ = TraceFault{e.span, e.what(), actor};
          goto done;
        }
        ip = b ? in.tgt : in.ftgt;
        break;
      }
      case Op::Jump:
        ip = in.tgt;
        break;
      case Op::Redo: {
        int64_t cur = state_.vals[in.var].num;
        int64_t next = 0;
        if (__builtin_add_overflow(cur, last_delta_[in.var], &next)) {
          fault_ = TraceFault{in.span, "integer overflow", actor};
          goto done;
        }
        const VarDom& dom = sys_->decl.vars[in.var];
        Value v = Value::of_int(next);
        if (!dom.contains(v)) {
          fault_ = TraceFault{in.span,
                              "redo drives '" + dom.name + "' out of range",
                              actor};
          goto done;
        }
        state_.vals[in.var] = v;
        assigned.push_back(in.var);
        ++ip;
        break;
      }
      case Op::Halt:
        ip = halt;
        break;
    }
    if (!whole_body && entered_group < 0) break;  // single-instruction unit
  }
done:
  // Bare jumps are control bookkeeping, not atomic units.
  while (!fault_ && ip < halt && prog.instrs[ip].op == Op::Jump)
    ip = prog.instrs[ip].tgt;

  if (fault_) {
    if (fault_->actor < 0) fault_->actor = actor;
    return {StepOutcome::Kind::Faulted, std::nullopt};
  }

  Transition t;
  t.actor = actor;
  t.actor_id = actor_ids_[actor];
  t.kind = kind;
  t.before = std::move(before);
  t.after = state_;
  t.span = prog.instrs.empty()
               ? SourceSpan{}
               : prog.instrs[std::min(ip, halt - 1)].span;
  for (size_t v = 0; v < state_.vals.size(); ++v)
    if (t.before.vals[v] != t.after.vals[v]) t.changed.push_back(static_cast<int>(v));
  return {StepOutcome::Kind::Stepped, std::move(t)};
}

Executor::StepOutcome Executor::step(int actor) {
  if (fault_) return {StepOutcome::Kind::Faulted, std::nullopt};
  if (actor < process_count()) {
    if (process_terminated(actor))
      return {StepOutcome::Kind::Terminated, std::nullopt};
    const CompiledProgram& prog = progs_[actor];
    int ip_before = ips_[actor];
    auto out = exec_unit(actor, prog, ips_[actor], TransitionKind::ProcessStep);
    if (out.kind == StepOutcome::Kind::Stepped && out.transition) {
      // The unit's label is its first instruction's span.
      out.transition->span = prog.instrs[ip_before].span;
    }
    return out;
  }
  if (!actor_runnable(actor)) {
    if (fault_) return {StepOutcome::Kind::Faulted, std::nullopt};
    return {StepOutcome::Kind::NotEnabled, std::nullopt};
  }
  int ii = actor - process_count();
  int ip = 0;  // each firing runs the whole body afresh
  auto out = exec_unit(actor, progs_[actor], ip, TransitionKind::Injection);
  if (out.kind == StepOutcome::Kind::Stepped) {
    --budgets_[ii];
    if (out.transition && !progs_[actor].instrs.empty())
      out.transition->span = sys_->injectors[ii].span;
  }
  return out;
}

std::vector<int64_t> Executor::config() const {
  std::vector<int64_t> c;
  c.reserve(ips_.size() + state_.vals.size() + budgets_.size());
  for (int ip : ips_) c.push_back(ip);
  for (const auto& v : state_.vals) c.push_back(v.num);
  for (int b : budgets_) c.push_back(b);
  bool needs_redo = false;
  for (size_t a = sys_->processes.size(); a < progs_.size(); ++a)
    for (const auto& in : progs_[a].instrs)
      if (in.op == Op::Redo) needs_redo = true;
  if (needs_redo) {
    for (size_t v = 0; v < last_delta_.size(); ++v) {
      c.push_back(last_delta_[v]);
      c.push_back(has_delta_[v]);
    }
  }
  return c;
}

void Executor::restore(const std::vector<int64_t>& config) {
  size_t i = 0;
  for (size_t a = 0; a < ips_.size(); ++a) ips_[a] = static_cast<int>(config[i++]);
  for (size_t v = 0; v < state_.vals.size(); ++v) state_.vals[v].num = config[i++];
  for (size_t b = 0; b < budgets_.size(); ++b)
    budgets_[b] = static_cast<int>(config[i++]);
  if (i < config.size()) {
    for (size_t v = 0; v < last_delta_.size(); ++v) {
      last_delta_[v] = config[i++];
      has_delta_[v] = static_cast<uint8_t>(config[i++]);
    }
  }
  fault_.reset();
}

namespace {

void finalize_trace(Trace& t, const Executor& ex) {
  int np = ex.process_count();
  t.status.assign(ex.actor_count(), ActorStatus::Running);
  for (int p = 0; p < np; ++p)
    if (ex.process_terminated(p)) t.status[p] = ActorStatus::Terminated;
  for (int a = np; a < ex.actor_count(); ++a)
    t.status[a] = ex.budgets_left()[a - np] == 0 ? ActorStatus::Terminated
                                                 : ActorStatus::Running;
  if (t.step_cap_hit)
    for (int p = 0; p < np; ++p)
      if (t.status[p] == ActorStatus::Running)
        t.status[p] = ActorStatus::StepBoundHit;
  t.fault = ex.fault();
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed) : gen(seed) {}
  // Unbiased-enough bounded draw with implementation-independent results.
  size_t index(size_t n) {
    return static_cast<size_t>((static_cast<unsigned __int128>(gen()) * n) >> 64);
  }
  double unit() { return (gen() >> 11) * 0x1.0p-53; }
};

}  // namespace

Trace run(const SystemSpec& sys, const SchedulerSpec& sched,
          const State& initial, int step_cap,
          const std::vector<int>& budget_override) {
  Executor ex(sys, initial, budget_override);
  Trace t;
  t.initial = initial;
  t.actor_ids = ex.actor_ids();
  t.termination_index.assign(ex.process_count(), -1);
  t.injections_fired.assign(sys.injectors.size(), 0);

  t.configs.push_back(ex.config());
  Rng rng(sched.seed);
  int rr_turn = 0;
  while (true) {
    if (ex.all_processes_terminated()) break;  // the run's natural end
    if (static_cast<int>(t.transitions.size()) >= step_cap) {
      t.step_cap_hit = true;
      break;
    }
    int chosen = -1;
    if (sched.kind == SchedulerKind::RoundRobin) {
      for (int k = 0; k < ex.actor_count(); ++k) {
        int a = (rr_turn + k) % ex.actor_count();
        if (ex.actor_runnable(a)) {
          chosen = a;
          rr_turn = (a + 1) % ex.actor_count();
          break;
        }
      }
    } else {
      std::vector<int> procs, injs;
      for (int a = 0; a < ex.actor_count(); ++a) {
        if (!ex.actor_runnable(a)) continue;
        (a < ex.process_count() ? procs : injs).push_back(a);
      }
      if (!injs.empty() && (procs.empty() || rng.unit() < sched.injector_weight))
        chosen = injs[rng.index(injs.size())];
      else if (!procs.empty())
        chosen = procs[rng.index(procs.size())];
    }
    if (chosen < 0) break;  // nobody runnable

    auto out = ex.step(chosen);
    if (out.kind == Executor::StepOutcome::Kind::Stepped) {
      if (out.transition->kind == TransitionKind::Injection)
        ++t.injections_fired[chosen - ex.process_count()];
      t.transitions.push_back(std::move(*out.transition));
      t.configs.push_back(ex.config());
      if (chosen < ex.process_count() && ex.process_terminated(chosen))
        t.termination_index[chosen] =
            static_cast<int>(t.transitions.size()) - 1;
    } else if (out.kind == Executor::StepOutcome::Kind::Faulted) {
      break;
    }
  }
  finalize_trace(t, ex);
  return t;
}

namespace {

struct Enumerator {
  const SystemSpec& sys;
  int depth;
  const EnumerateCaps& caps;
  Executor ex;
  Trace current;
  EnumerateResult out;
  long long nodes = 0;

  Enumerator(const SystemSpec& s, const State& initial,
             const std::vector<int>& budget_override, int d,
             const EnumerateCaps& c)
      : sys(s), depth(d), caps(c), ex(s, initial, budget_override) {
    current.initial = initial;
    current.actor_ids = ex.actor_ids();
    current.termination_index.assign(ex.process_count(), -1);
    current.injections_fired.assign(s.injectors.size(), 0);
    current.configs.push_back(ex.config());
  }

  void emit(bool capped) {
    if (static_cast<int>(out.traces.size()) >= caps.max_traces) {
      out.cap_exceeded = true;
      return;
    }
    Trace t = current;
    t.step_cap_hit = capped;
    finalize_trace(t, ex);
    out.traces.push_back(std::move(t));
  }

  void walk() {
    if (out.cap_exceeded) return;
    if (++nodes > caps.max_nodes) {
      out.cap_exceeded = true;
      return;
    }
    std::vector<int> runnable;
    for (int a = 0; a < ex.actor_count(); ++a)
      if (ex.actor_runnable(a)) runnable.push_back(a);
    if (ex.fault()) {
      // enabling-predicate fault discovered during the scan
      current.fault = ex.fault();
      emit(false);
      current.fault.reset();
      return;
    }
    // A run ends once every process terminated; remaining injector firings
    // are explored as distinct longer interleavings (the injector owes no
    // fairness, so stopping here is a scheduler choice).
    bool all_terminated = ex.all_processes_terminated();
    if (all_terminated) emit(false);
    if (static_cast<int>(current.transitions.size()) >= depth) {
      if (!all_terminated) emit(true);
      return;
    }
    auto snapshot = ex.config();
    for (int a : runnable) {
      auto out_step = ex.step(a);
      if (out_step.kind == Executor::StepOutcome::Kind::Faulted) {
        current.fault = ex.fault();
        emit(false);
        current.fault.reset();
        ex.restore(snapshot);
        continue;
      }
      if (out_step.kind != Executor::StepOutcome::Kind::Stepped) {
        ex.restore(snapshot);
        continue;
      }
      bool injection = out_step.transition->kind == TransitionKind::Injection;
      if (injection) ++current.injections_fired[a - ex.process_count()];
      int prev_term = -2;
      if (a < ex.process_count()) {
        prev_term = current.termination_index[a];
        if (ex.process_terminated(a))
          current.termination_index[a] =
              static_cast<int>(current.transitions.size());
      }
      current.transitions.push_back(std::move(*out_step.transition));
      current.configs.push_back(ex.config());
      walk();
      current.configs.pop_back();
      current.transitions.pop_back();
      if (injection) --current.injections_fired[a - ex.process_count()];
      if (prev_term != -2) current.termination_index[a] = prev_term;
      ex.restore(snapshot);
      if (out.cap_exceeded) return;
    }
  }
};

}  // namespace

EnumerateResult enumerate_traces(const SystemSpec& sys, const State& initial,
                                 int depth,
                                 const std::vector<int>& budget_override,
                                 const EnumerateCaps& caps) {
  Enumerator e(sys, initial, budget_override, depth, caps);
  e.walk();
  return std::move(e.out);
}

// ---------------------------------------------------------------------------
// Configuration-graph exploration

namespace {

struct ConfigKeyHash {
  size_t operator()(const std::vector<int64_t>& v) const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (int64_t x : v) h = hash_mix(h, static_cast<uint64_t>(x));
    return static_cast<size_t>(h);
  }
};

}  // namespace

std::vector<int> ConfigGraph::path_to(int config) const {
  std::vector<int> path;
  int c = config;
  while (parent_edge[c] >= 0) {
    path.push_back(parent_edge[c]);
    c = edges[parent_edge[c]].from;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Trace ConfigGraph::path_trace(const std::vector<int>& edge_path,
                              int tail_config) const {
  Trace t;
  int root = edge_path.empty() ? tail_config : edges[edge_path.front()].from;
  t.initial = states[root];
  int np = static_cast<int>(sys->processes.size());
  int na = np + static_cast<int>(sys->injectors.size());
  t.actor_ids.reserve(na);
  for (const auto& p : sys->processes) t.actor_ids.push_back(p.id);
  for (const auto& i : sys->injectors) t.actor_ids.push_back(i.id);
  t.termination_index.assign(np, -1);
  t.injections_fired.assign(sys->injectors.size(), 0);
  t.configs.push_back(configs[root]);
  for (int ei : edge_path) {
    const GraphEdge& e = edges[ei];
    t.configs.push_back(configs[e.to]);
    Transition tr;
    tr.actor = e.actor;
    tr.actor_id = t.actor_ids[e.actor];
    tr.kind = e.kind;
    tr.before = states[e.from];
    tr.after = states[e.to];
    tr.span = e.span;
    tr.changed = e.changed;
    if (e.kind == TransitionKind::Injection)
      ++t.injections_fired[e.actor - np];
    t.transitions.push_back(std::move(tr));
  }
  // Statuses from the tail configuration's instruction pointers.
  Executor probe(*sys, states[tail_config]);
  probe.restore(configs[tail_config]);
  t.status.assign(na, ActorStatus::Running);
  for (int p = 0; p < np; ++p)
    if (probe.process_terminated(p)) t.status[p] = ActorStatus::Terminated;
  for (size_t i = 0; i < t.transitions.size(); ++i) {
    int a = t.transitions[i].actor;
    if (a < np && t.status[a] == ActorStatus::Terminated)
      t.termination_index[a] = static_cast<int>(i);
  }
  return t;
}

ConfigGraph explore(const SystemSpec& sys, const std::vector<State>& initials,
                    int depth, const std::vector<int>& budget_override,
                    const ExploreCaps& caps) {
  ConfigGraph g;
  g.sys = &sys;
  g.complete = true;
  if (initials.empty()) return g;

  Executor ex(sys, initials.front(), budget_override);
  std::unordered_map<std::vector<int64_t>, int, ConfigKeyHash> seen;
  std::deque<int> queue;

  auto intern = [&](const std::vector<int64_t>& key, const State& st,
                    int d, int parent) -> int {
    auto it = seen.find(key);
    if (it != seen.end()) return it->second;
    int id = static_cast<int>(g.configs.size());
    if (id >= caps.max_configs) return -1;
    seen.emplace(key, id);
    g.configs.push_back(key);
    g.states.push_back(st);
    g.depth.push_back(d);
    g.parent_edge.push_back(parent);
    queue.push_back(id);
    return id;
  };

  for (const auto& init : initials) {
    Executor fresh(sys, init, budget_override);
    int id = intern(fresh.config(), init, 0, -1);
    if (id < 0) {
      g.complete = false;
      return g;
    }
    g.initial_configs.push_back(id);
  }

  while (!queue.empty()) {
    int cid = queue.front();
    queue.pop_front();
    ex.restore(g.configs[cid]);

    std::vector<int> runnable;
    for (int a = 0; a < ex.actor_count(); ++a)
      if (ex.actor_runnable(a)) runnable.push_back(a);
    if (ex.fault()) {
      g.faults.push_back({cid, ex.fault()->actor, ex.fault()->span,
                          ex.fault()->message});
      continue;
    }
    // Terminal for run purposes: every process done. Fireable injectors may
    // still extend the interleaving; those edges are explored too.
    if (ex.all_processes_terminated()) g.terminal_configs.push_back(cid);
    if (runnable.empty()) continue;
    if (g.depth[cid] >= depth) {
      g.depth_truncated = true;
      g.complete = false;
      continue;
    }
    for (int a : runnable) {
      ex.restore(g.configs[cid]);
      auto out = ex.step(a);
      if (out.kind == Executor::StepOutcome::Kind::Faulted) {
        g.faults.push_back({cid, a, ex.fault()->span, ex.fault()->message});
        continue;
      }
      if (out.kind != Executor::StepOutcome::Kind::Stepped) continue;
      if (static_cast<long long>(g.edges.size()) >= caps.max_edges) {
        g.complete = false;
        return g;
      }
      int eid = static_cast<int>(g.edges.size());
      int to = intern(ex.config(), ex.state(), g.depth[cid] + 1, eid);
      if (to < 0) {
        g.complete = false;
        return g;
      }
      GraphEdge e;
      e.from = cid;
      e.to = to;
      e.actor = a;
      e.kind = out.transition->kind;
      e.span = out.transition->span;
      e.changed = out.transition->changed;
      g.edges.push_back(std::move(e));
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Fault-model templates

namespace {

ExprPtr frame_others(const StateDecl& decl, const std::string& target) {
  std::vector<ExprPtr> parts;
  for (const auto& v : decl.vars) {
    if (v.name == target) continue;
    parts.push_back(
        mk_cmp(CmpOp::Eq, mk_ref(v.name), mk_ref(v.name, /*is_old=*/true)));
  }
  return mk_conj(parts);
}

StmtPtr assign_stmt(const std::string& var, ExprPtr rhs) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::Assign;
  s->target = var;
  s->expr = std::move(rhs);
  return s;
}

}  // namespace

InjectorSpec make_injector(FaultKind kind, const std::string& target_var,
                           const StateDecl& decl, int budget) {
  int vi = decl.index_of(target_var);
  if (vi < 0)
    throw std::invalid_argument("make_injector: undeclared variable '" +
                                target_var + "'");
  const VarDom& dom = decl.vars[vi];
  InjectorSpec inj;
  inj.id = std::string("EI_") + fault_kind_str(kind) + "_" + target_var;
  inj.kinds = {kind};
  inj.budget = budget;

  switch (kind) {
    case FaultKind::LostUpdate: {
      // Undoes one unit of a decrementing process by re-incrementing the
      // target; mirrors deleting a state update.
      if (dom.ty != Ty::Int)
        throw std::invalid_argument("lost-update template needs an int target");
      inj.enabling = mk_bin(
          ExprKind::And,
          mk_cmp(CmpOp::Gt, mk_ref(target_var), mk_int(dom.lo)),
          mk_cmp(CmpOp::Lt, mk_ref(target_var), mk_int(dom.hi)));
      inj.body.stmts.push_back(assign_stmt(
          target_var,
          mk_bin(ExprKind::Add, mk_ref(target_var), mk_int(1))));
      inj.guarantee = mk_bin(
          ExprKind::And, frame_others(decl, target_var),
          mk_cmp(CmpOp::Gt, mk_ref(target_var), mk_ref(target_var, true)));
      break;
    }
    case FaultKind::DuplicatedUpdate: {
      if (dom.ty != Ty::Int)
        throw std::invalid_argument("duplicate template needs an int target");
      inj.enabling = mk_bool(true);  // plus an observed delta, at runtime
      auto s = std::make_shared<Stmt>();
      s->kind = StmtKind::Redo;
      s->target = target_var;
      inj.body.stmts.push_back(s);
      inj.guarantee = frame_others(decl, target_var);
      break;
    }
    case FaultKind::FakeUpdate: {
      // Writes a fabricated value; the guarantee only frames the rest.
      ExprPtr value;
      switch (dom.ty) {
        case Ty::Int: value = mk_int(dom.hi); break;
        case Ty::Bool: value = mk_bool(true); break;
        case Ty::Set: value = mk_set(0); break;
        case Ty::Token:
          value = mk_ref(decl.token_name(dom.token_ids.back()));
          break;
      }
      inj.enabling = mk_cmp(CmpOp::Ne, mk_ref(target_var), value);
      inj.body.stmts.push_back(assign_stmt(target_var, value));
      inj.guarantee = frame_others(decl, target_var);
      break;
    }
  }
  return inj;
}

std::optional<std::vector<State>> initial_states(const SystemSpec& sys,
                                                 const ExprPtr& extra,
                                                 uint64_t state_cap) {
  auto size = state_space_size(sys.decl);
  if (!size || *size > state_cap) return std::nullopt;
  std::vector<State> out;
  for_each_state(sys.decl, [&](const State& s) {
    bool ok = true;
    try {
      ok = eval_state_predicate(*sys.init, s) &&
           (!extra || eval_state_predicate(*extra, s));
    } catch (const EvalError&) {
      ok = false;
    }
    if (ok) out.push_back(s);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Trace serialization (docs/trace-format.md)

std::string serialize_trace(const Trace& t) {
  std::ostringstream os;
  os << "trace v1\n";
  os << "init " << t.initial.str() << "\n";
  const StateDecl* decl = t.initial.decl;
  for (size_t i = 0; i < t.transitions.size(); ++i) {
    const Transition& tr = t.transitions[i];
    os << i << " " << tr.actor_id << " "
       << (tr.kind == TransitionKind::ProcessStep ? "PROCESS_STEP"
                                                  : "INJECTION")
       << " ";
    if (tr.changed.empty()) {
      os << "-";
    } else {
      for (size_t c = 0; c < tr.changed.size(); ++c) {
        int v = tr.changed[c];
        if (c) os << ",";
        os << decl->vars[v].name << ":" << decl->value_str(tr.before.vals[v])
           << "->" << decl->value_str(tr.after.vals[v]);
      }
    }
    os << " @" << (tr.span.valid() ? tr.span.str() : "-") << "\n";
  }
  os << "status";
  for (size_t a = 0; a < t.actor_ids.size(); ++a) {
    os << " " << t.actor_ids[a] << "=";
    switch (t.status[a]) {
      case ActorStatus::Running: os << "RUNNING"; break;
      case ActorStatus::Terminated: os << "TERMINATED"; break;
      case ActorStatus::StepBoundHit: os << "STEP_BOUND_HIT"; break;
      case ActorStatus::Blocked: os << "BLOCKED"; break;
    }
  }
  os << "\n";
  if (!t.injections_fired.empty()) {
    os << "injections";
    size_t np = t.actor_ids.size() - t.injections_fired.size();
    for (size_t i = 0; i < t.injections_fired.size(); ++i)
      os << " " << t.actor_ids[np + i] << "=" << t.injections_fired[i];
    os << "\n";
  }
  if (t.fault)
    os << "fault @" << t.fault->span.str() << " " << t.fault->message << "\n";
  os << "end\n";
  return os.str();
}

}  // namespace rgspec
