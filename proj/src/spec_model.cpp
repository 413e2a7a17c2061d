#include "rgspec/spec_model.hpp"

#include <set>

#include "rgspec/eval.hpp"
#include "rgspec/runtime.hpp"
#include "rgspec/typecheck.hpp"

namespace rgspec {

const char* fault_kind_str(FaultKind k) {
  switch (k) {
    case FaultKind::LostUpdate: return "lost";
    case FaultKind::DuplicatedUpdate: return "dup";
    case FaultKind::FakeUpdate: return "fake";
  }
  return "?";
}

int SystemSpec::process_index(const std::string& id) const {
  for (size_t i = 0; i < processes.size(); ++i)
    if (processes[i].id == id) return static_cast<int>(i);
  return -1;
}

int SystemSpec::injector_index(const std::string& id) const {
  for (size_t i = 0; i < injectors.size(); ++i)
    if (injectors[i].id == id) return static_cast<int>(i);
  return -1;
}

namespace {

void check_pred_into(const ExprPtr& pred, const StateDecl& decl, Epoch epoch,
                     Diagnostics& diags) {
  if (!pred) return;
  auto d = check_predicate(*pred, decl, epoch);
  diags.insert(diags.end(), d.begin(), d.end());
}

// Runs the injector body from every enabled state and checks the resulting
// transition against the injector's guarantee.
void check_injector_body(const SystemSpec& sys, const InjectorSpec& inj,
                         uint64_t state_cap, Diagnostics& diags) {
  auto size = state_space_size(sys.decl);
  if (!size || *size > state_cap) {
    diags.push_back({Severity::Note, inj.span,
                     "injector '" + inj.id +
                         "': state space too large for the exhaustive "
                         "body-vs-guarantee check; enforced per trace"});
    return;
  }
  bool uses_redo = false;
  for (const auto& s : inj.body.stmts)
    if (s->kind == StmtKind::Redo) uses_redo = true;
  if (uses_redo) {
    diags.push_back({Severity::Note, inj.span,
                     "injector '" + inj.id +
                         "': body replays process deltas; guarantee is "
                         "enforced per trace"});
    return;
  }

  SystemSpec probe;
  probe.decl = sys.decl;
  probe.init = mk_bool(true);
  InjectorSpec one = inj;
  one.budget = 1;
  probe.injectors.push_back(one);

  bool violated = false;
  for_each_state(sys.decl, [&](const State& s) {
    bool enabled = false;
    try {
      enabled = eval_state_predicate(*inj.enabling, s);
    } catch (const EvalError& e) {
      diags.push_back({Severity::Error, e.span,
                       "injector '" + inj.id +
                           "' enabling predicate faulted: " + e.what()});
      return false;
    }
    if (!enabled) return true;
    Executor ex(probe, s);
    auto o = ex.step(0);
    if (o.kind == Executor::StepOutcome::Kind::Faulted) {
      diags.push_back({Severity::Warning, ex.fault()->span,
                       "injector '" + inj.id + "' body can fault: " +
                           ex.fault()->message + " from state [" + s.str() +
                           "]"});
      return true;
    }
    if (o.kind != Executor::StepOutcome::Kind::Stepped) return true;
    try {
      if (!eval_predicate(*inj.guarantee, o.transition->before,
                          o.transition->after)) {
        diags.push_back(
            {Severity::Error, inj.guarantee->span,
             "injector '" + inj.id + "' body violates its guarantee from "
             "state [" + s.str() + "]"});
        violated = true;
        return false;
      }
    } catch (const EvalError& e) {
      diags.push_back({Severity::Error, e.span,
                       "injector '" + inj.id +
                           "' guarantee faulted: " + e.what()});
      return false;
    }
    return true;
  });
  (void)violated;
}

}  // namespace

Diagnostics validate_system(const SystemSpec& sys, uint64_t state_cap) {
  Diagnostics diags;

  std::set<std::string> ids;
  auto claim_id = [&](const std::string& id, const SourceSpan& span,
                      const char* what) {
    if (!ids.insert(id).second)
      diags.push_back({Severity::Error, span,
                       std::string("duplicate ") + what + " id '" + id + "'"});
  };

  for (const auto& v : sys.decl.vars) {
    if (v.ty == Ty::Int && v.lo > v.hi)
      diags.push_back({Severity::Error, v.span,
                       "empty int range for '" + v.name + "'"});
    if (v.ty == Ty::Set && (v.set_max < 0 || v.set_max > 63))
      diags.push_back({Severity::Error, v.span,
                       "natset max for '" + v.name + "' must be in [0..63]"});
    if (v.ty == Ty::Token && v.token_ids.empty())
      diags.push_back({Severity::Error, v.span,
                       "enum '" + v.name + "' has no members"});
  }

  if (sys.processes.empty())
    diags.push_back({Severity::Error, {}, "system declares no process"});

  check_pred_into(sys.init, sys.decl, Epoch::Single, diags);

  for (const auto& p : sys.processes) {
    claim_id(p.id, p.span, "process");
    check_pred_into(p.pre, sys.decl, Epoch::Single, diags);
    if (p.layers.empty()) {
      diags.push_back({Severity::Error, p.span,
                       "process '" + p.id + "' has no layers"});
    } else if (!p.layers[0].post) {
      diags.push_back({Severity::Error, p.layers[0].span,
                       "process '" + p.id +
                           "': layer 0 must declare a postcondition"});
    }
    std::set<std::string> layer_names;
    for (const auto& l : p.layers) {
      if (!layer_names.insert(l.name).second)
        diags.push_back({Severity::Error, l.span,
                         "process '" + p.id + "': duplicate layer name '" +
                             l.name + "'"});
      check_pred_into(l.rely, sys.decl, Epoch::Two, diags);
      check_pred_into(l.guarantee, sys.decl, Epoch::Two, diags);
      check_pred_into(l.post, sys.decl, Epoch::Single, diags);
    }
    auto pd = check_program(p.body, sys.decl);
    diags.insert(diags.end(), pd.begin(), pd.end());
  }

  for (const auto& inj : sys.injectors) {
    claim_id(inj.id, inj.span, "injector");
    check_pred_into(inj.enabling, sys.decl, Epoch::Single, diags);
    check_pred_into(inj.guarantee, sys.decl, Epoch::Two, diags);
    if (inj.budget < 0)
      diags.push_back({Severity::Error, inj.span,
                       "injector '" + inj.id + "' budget must be >= 0"});
    auto pd = check_program(inj.body, sys.decl);
    diags.insert(diags.end(), pd.begin(), pd.end());
    if (!has_errors(diags)) check_injector_body(sys, inj, state_cap, diags);
  }

  return diags;
}

int LayerSelection::layer_for(const std::string& pid) const {
  for (const auto& [id, layer] : per_process)
    if (id == pid) return layer;
  return 0;
}

ExprPtr environment_guarantee(const SystemSpec& sys, const std::string& pid,
                              const LayerSelection& sel) {
  std::vector<ExprPtr> parts;
  for (const auto& p : sys.processes) {
    if (p.id == pid) continue;
    int layer = sel.layer_for(p.id);
    if (layer < 0 || layer >= static_cast<int>(p.layers.size())) layer = 0;
    parts.push_back(p.layers[layer].guarantee);
  }
  for (const auto& inj : sys.injectors) parts.push_back(inj.guarantee);
  return mk_conj(parts);
}

std::vector<ComplementarityRow> check_complementarity(
    const SystemSpec& sys, const ComplementarityOptions& opts) {
  std::vector<ComplementarityRow> rows;
  for (const auto& p : sys.processes) {
    for (size_t li = 0; li < p.layers.size(); ++li) {
      ComplementarityRow row;
      row.pid = p.id;
      row.layer = static_cast<int>(li);
      row.layer_name = p.layers[li].name;

      std::vector<ExprPtr> parts;
      for (const auto& other : sys.processes) {
        if (other.id == p.id) continue;
        int layer = opts.selection.layer_for(other.id);
        if (layer < 0 || layer >= static_cast<int>(other.layers.size()))
          layer = 0;
        parts.push_back(other.layers[layer].guarantee);
      }
      // Injector guarantees describe faults; they join the environment of
      // the abnormal layers only, unless explicitly requested. The normal
      // layer captures the fault-free regime.
      if (li >= 1 || opts.injectors_at_normal)
        for (const auto& inj : sys.injectors) parts.push_back(inj.guarantee);

      if (parts.empty()) {
        // No environment actor: nothing can make an environment transition,
        // so any rely holds over the (empty) set of them.
        row.vacuous = true;
        row.verdict.note = "vacuous: empty environment";
      } else {
        row.verdict = implies_on_domain(mk_conj(parts), p.layers[li].rely,
                                        sys.decl, opts.pair_cap);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<MonotonicityRow> check_layer_monotonicity(const ProcessSpec& ps,
                                                      const StateDecl& decl,
                                                      uint64_t pair_cap) {
  std::vector<MonotonicityRow> rows;
  for (size_t i = 0; i + 1 < ps.layers.size(); ++i) {
    MonotonicityRow row;
    row.pid = ps.id;
    row.weaker_layer = static_cast<int>(i + 1);
    row.verdict = implies_on_domain(ps.layers[i].rely, ps.layers[i + 1].rely,
                                    decl, pair_cap);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rgspec
