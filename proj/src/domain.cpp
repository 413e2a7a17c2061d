#include "rgspec/domain.hpp"

#include <algorithm>
#include <sstream>

#include "rgspec/eval.hpp"

namespace rgspec {

std::optional<uint64_t> state_space_size(const StateDecl& decl) {
  uint64_t n = 1;
  for (const auto& v : decl.vars) {
    uint64_t c = v.carrier_size();
    if (c == 0) return std::nullopt;
    if (n > UINT64_MAX / c) return std::nullopt;
    n *= c;
  }
  return n;
}

namespace {

// Advances `vals` at the given variable positions, odometer style.
// Returns false once the odometer wraps.
bool advance(const StateDecl& decl, const std::vector<int>& idxs,
             std::vector<Value>& vals) {
  for (int pos = static_cast<int>(idxs.size()) - 1; pos >= 0; --pos) {
    int vi = idxs[pos];
    if (auto nx = decl.vars[vi].next(vals[vi])) {
      vals[vi] = *nx;
      return true;
    }
    vals[vi] = decl.vars[vi].lowest();
  }
  return false;
}

}  // namespace

bool for_each_state(const StateDecl& decl,
                    const std::function<bool(const State&)>& visit) {
  State s = State::lowest(decl);
  std::vector<int> all(decl.vars.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  while (true) {
    if (!visit(s)) return false;
    if (all.empty() || !advance(decl, all, s.vals)) return true;
  }
}

std::string ImpliesVerdict::str(const StateDecl& decl) const {
  std::ostringstream os;
  switch (status) {
    case ImpliesStatus::Holds:
      os << "HOLDS";
      if (!note.empty()) os << " (" << note << ")";
      else os << " (" << pairs_checked << " pairs)";
      break;
    case ImpliesStatus::Fails:
      os << "FAILS witness before[" << witness->before.str() << "] after["
         << witness->after.str() << "]";
      break;
    case ImpliesStatus::CapExceeded:
      os << "CAP-EXCEEDED (domain " << domain_size << " pairs)";
      break;
    case ImpliesStatus::EvalFault:
      os << "EVAL-FAULT (" << note << ")";
      break;
  }
  return os.str();
}

ImpliesVerdict implies_on_domain(const ExprPtr& p, const ExprPtr& q,
                                 const StateDecl& decl, uint64_t pair_cap) {
  ImpliesVerdict out;
  if (is_const_true(*q)) {
    out.note = "consequent is the constant true";
    return out;
  }
  if (is_const_false(*p)) {
    out.note = "antecedent is the constant false";
    return out;
  }

  std::set<std::string> support;
  collect_state_vars(*p, support);
  collect_state_vars(*q, support);
  std::vector<int> idxs;
  for (const auto& name : support) {
    int vi = decl.index_of(name);
    if (vi >= 0) idxs.push_back(vi);
  }
  std::sort(idxs.begin(), idxs.end());

  uint64_t states = 1;
  for (int vi : idxs) {
    uint64_t c = decl.vars[vi].carrier_size();
    if (c != 0 && states > UINT64_MAX / c) states = UINT64_MAX;
    else states *= c;
  }
  uint64_t pairs =
      (states != 0 && states > UINT64_MAX / states) ? UINT64_MAX
                                                    : states * states;
  if (pairs > pair_cap) {
    out.status = ImpliesStatus::CapExceeded;
    out.domain_size = pairs;
    return out;
  }

  // Unreferenced variables are pinned to their lowest value; they cannot
  // influence either predicate.
  State before = State::lowest(decl);
  State after = State::lowest(decl);
  try {
    while (true) {
      // Inner loop: after-epoch odometer for a fixed before state.
      while (true) {
        ++out.pairs_checked;
        if (eval_predicate(*p, before, after) &&
            !eval_predicate(*q, before, after)) {
          out.status = ImpliesStatus::Fails;
          out.witness = StatePair{before, after};
          return out;
        }
        if (idxs.empty() || !advance(decl, idxs, after.vals)) break;
      }
      if (idxs.empty() || !advance(decl, idxs, before.vals)) break;
    }
  } catch (const EvalError& e) {
    out.status = ImpliesStatus::EvalFault;
    out.note = e.what() + std::string(" at ") + e.span.str();
    return out;
  }
  return out;
}

}  // namespace rgspec
