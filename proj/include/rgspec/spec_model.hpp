#ifndef RGSPEC_SPEC_MODEL_HPP_
#define RGSPEC_SPEC_MODEL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "rgspec/domain.hpp"
#include "rgspec/program.hpp"

namespace rgspec {

struct ConditionLayer {
  std::string name;          // layer 0 is conventionally "normal"
  ExprPtr rely;              // two-epoch
  ExprPtr guarantee;         // two-epoch
  ExprPtr post;              // single-epoch; empty -> layer 0's post
  SourceSpan span;
};

struct ProcessSpec {
  std::string id;
  ExprPtr pre;               // single-epoch
  std::vector<ConditionLayer> layers;  // strongest rely first
  Program body;
  SourceSpan span;

  const ExprPtr& post_of(int layer) const {
    return layers[layer].post ? layers[layer].post : layers[0].post;
  }
};

enum class FaultKind : uint8_t { LostUpdate, DuplicatedUpdate, FakeUpdate };

const char* fault_kind_str(FaultKind k);

struct InjectorSpec {
  std::string id;
  std::vector<FaultKind> kinds;  // documentation of intent
  ExprPtr enabling;              // single-epoch: states where firing is allowed
  ExprPtr guarantee;             // two-epoch: hard constraint on every firing
  int budget = 0;                // max firings per run; 0 = inert
  Program body;                  // executed atomically per firing
  SourceSpan span;
};

struct SystemSpec {
  StateDecl decl;
  ExprPtr init;                  // single-epoch constraint on initial states
  std::vector<ProcessSpec> processes;
  std::vector<InjectorSpec> injectors;
  Atomicity atomicity = Atomicity::Statement;
  std::string source_file;

  int process_index(const std::string& id) const;
  int injector_index(const std::string& id) const;
};

// Aggregated well-formedness: id uniqueness, nonempty layers, every
// predicate and program type-correct, injector bodies respecting their
// guarantees (exhaustively, when the state space is below `state_cap`).
Diagnostics validate_system(const SystemSpec& sys,
                            uint64_t state_cap = kDefaultStateCap);

// Which layer each other actor is assumed to occupy when assembling an
// environment guarantee. Defaults to layer 0 for every process.
struct LayerSelection {
  std::vector<std::pair<std::string, int>> per_process;
  int layer_for(const std::string& pid) const;
};

// Conjunction of the selected-layer guarantees of all OTHER processes plus
// all injector guarantees: the strongest environment the process may face.
// Empty environment yields the literal `true`.
ExprPtr environment_guarantee(const SystemSpec& sys, const std::string& pid,
                              const LayerSelection& sel = {});

struct ComplementarityRow {
  std::string pid;
  int layer = 0;
  std::string layer_name;
  bool vacuous = false;        // no environment actor participates
  ImpliesVerdict verdict;
};

struct ComplementarityOptions {
  LayerSelection selection;
  // Injector guarantees join the environment only for abnormal layers
  // (index >= 1): the normal layer describes the fault-free regime.
  bool injectors_at_normal = false;
  uint64_t pair_cap = kDefaultPairCap;
};

// For every (process, layer): environment guarantee => layer rely, checked
// by exhaustive two-epoch enumeration. A row with no environment actors is
// vacuously HOLDS (an absent environment makes no transitions).
std::vector<ComplementarityRow> check_complementarity(
    const SystemSpec& sys, const ComplementarityOptions& opts = {});

struct MonotonicityRow {
  std::string pid;
  int weaker_layer = 0;        // verdict is layers[weaker-1].rely => layers[weaker].rely
  ImpliesVerdict verdict;
};

// Relies must weaken down the layer list; consecutive implications suffice.
std::vector<MonotonicityRow> check_layer_monotonicity(
    const ProcessSpec& ps, const StateDecl& decl,
    uint64_t pair_cap = kDefaultPairCap);

}  // namespace rgspec

#endif  // RGSPEC_SPEC_MODEL_HPP_
