#ifndef RGSPEC_TYPECHECK_HPP_
#define RGSPEC_TYPECHECK_HPP_

#include <optional>

#include "rgspec/ast.hpp"

namespace rgspec {

// Two-epoch predicates (rely/guarantee) may use old(x); single-epoch ones
// (pre/post/init/enabling, program expressions) may not.
enum class Epoch { Single, Two };

struct TypeResult {
  std::optional<Ty> type;  // empty on error
  Diagnostics diags;
  bool ok() const { return type.has_value() && !has_errors(diags); }
};

// Resolves every Ref (state variable, quantifier binding, enum token) and
// annotates types. Errors carry the offending node's span. Safe to re-run.
TypeResult type_check(const Expr& e, const StateDecl& decl, Epoch epoch);

// Convenience: type_check and require a boolean result.
Diagnostics check_predicate(const Expr& e, const StateDecl& decl, Epoch epoch);

}  // namespace rgspec

#endif  // RGSPEC_TYPECHECK_HPP_
