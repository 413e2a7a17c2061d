#ifndef RGSPEC_EVAL_HPP_
#define RGSPEC_EVAL_HPP_

#include <stdexcept>

#include "rgspec/ast.hpp"

namespace rgspec {

// Raised for range overflow, min of an empty set, and similar runtime
// evaluation faults. Never used for type errors (those are diagnostics).
struct EvalError : std::runtime_error {
  SourceSpan span;
  EvalError(SourceSpan sp, const std::string& msg)
      : std::runtime_error(msg), span(std::move(sp)) {}
};

// Evaluates a resolved expression. `old(x)` reads pair.before, plain refs
// read pair.after. Pure; throws EvalError on arithmetic faults.
Value eval_expr(const Expr& e, const StatePair& pair);

bool eval_predicate(const Expr& pred, const StatePair& pair);
bool eval_predicate(const Expr& pred, const State& before, const State& after);

// Single-epoch convenience: before = after = s.
bool eval_state_predicate(const Expr& pred, const State& s);
Value eval_expr_single(const Expr& e, const State& s);

}  // namespace rgspec

#endif  // RGSPEC_EVAL_HPP_
