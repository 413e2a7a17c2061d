#ifndef RGSPEC_DOMAIN_HPP_
#define RGSPEC_DOMAIN_HPP_

#include <functional>
#include <optional>
#include <string>

#include "rgspec/ast.hpp"

namespace rgspec {

// Default caps for brute-force enumeration. Counted in states for
// single-epoch walks and in before/after pairs for two-epoch walks.
inline constexpr uint64_t kDefaultStateCap = 4'000'000;
inline constexpr uint64_t kDefaultPairCap = 64'000'000;

// Number of states over the full declaration, or nullopt on overflow.
std::optional<uint64_t> state_space_size(const StateDecl& decl);

// Visits every state of the declaration in lexicographic carrier order.
// Returns false (and stops) when the visitor returns false.
bool for_each_state(const StateDecl& decl,
                    const std::function<bool(const State&)>& visit);

enum class ImpliesStatus { Holds, Fails, CapExceeded, EvalFault };

struct ImpliesVerdict {
  ImpliesStatus status = ImpliesStatus::Holds;
  std::optional<StatePair> witness;   // Fails: first counterexample
  uint64_t pairs_checked = 0;
  uint64_t domain_size = 0;           // CapExceeded: the offending estimate
  std::string note;                   // "vacuous: ...", eval fault message
  bool holds() const { return status == ImpliesStatus::Holds; }
  std::string str(const StateDecl& decl) const;
};

// Exhaustive check of p => q over every before/after pair of the declared
// domain. Only variables referenced by p or q are enumerated (the rest are
// pinned to their lowest value; they cannot influence either side). A
// consequent that is literally `true` (or an antecedent literally `false`)
// short-circuits without enumeration.
ImpliesVerdict implies_on_domain(const ExprPtr& p, const ExprPtr& q,
                                 const StateDecl& decl,
                                 uint64_t pair_cap = kDefaultPairCap);

}  // namespace rgspec

#endif  // RGSPEC_DOMAIN_HPP_
