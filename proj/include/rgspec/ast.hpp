#ifndef RGSPEC_AST_HPP_
#define RGSPEC_AST_HPP_

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "rgspec/value.hpp"

namespace rgspec {

// One AST serves expressions and predicates. Nodes are immutable after
// parsing except for the resolution slots filled by the type checker.
enum class ExprKind : uint8_t {
  IntLit,
  BoolLit,
  SetLit,
  Ref,      // variable / bound name / enum token, epoch on `is_old`
  Neg,
  Add,
  Sub,
  Cmp,
  In,
  Not,
  And,
  Or,
  Implies,
  Forall,
  Exists,
  Gcd,
  MinOf,
  Abs,
  Card,
};

enum class CmpOp : uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

const char* cmp_str(CmpOp op);

enum class RefKind : uint8_t { Unresolved, StateVar, BoundVar, TokenLit };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  SourceSpan span;

  int64_t int_val = 0;        // IntLit
  uint64_t set_val = 0;       // SetLit
  bool bool_val = false;      // BoolLit
  std::string name;           // Ref / quantifier binder
  bool is_old = false;        // Ref: before-epoch (`old(x)`)
  CmpOp cmp = CmpOp::Eq;

  ExprPtr a, b;               // children; quantifier: a = domain, b = body

  // Filled by resolve(); a node may be re-resolved, always against the
  // same declaration.
  mutable RefKind ref_kind = RefKind::Unresolved;
  mutable int ref_index = -1;   // StateVar: var index; BoundVar: de Bruijn
                                // depth; TokenLit: token id
  mutable Ty type = Ty::Bool;
};

ExprPtr mk_int(int64_t v, SourceSpan sp = {});
ExprPtr mk_bool(bool v, SourceSpan sp = {});
ExprPtr mk_set(uint64_t mask, SourceSpan sp = {});
ExprPtr mk_ref(std::string name, bool is_old = false, SourceSpan sp = {});
ExprPtr mk_unary(ExprKind k, ExprPtr a, SourceSpan sp = {});
ExprPtr mk_bin(ExprKind k, ExprPtr a, ExprPtr b, SourceSpan sp = {});
ExprPtr mk_cmp(CmpOp op, ExprPtr a, ExprPtr b, SourceSpan sp = {});
ExprPtr mk_quant(bool forall, std::string binder, ExprPtr domain, ExprPtr body,
                 SourceSpan sp = {});

// n-ary conjunction; empty input yields the literal `true`.
ExprPtr mk_conj(const std::vector<ExprPtr>& parts);

bool is_const_true(const Expr& e);
bool is_const_false(const Expr& e);

// Structural equality, ignoring spans and resolution state.
bool structurally_equal(const Expr& a, const Expr& b);

// State variables referenced anywhere in the tree (either epoch).
void collect_state_vars(const Expr& e, std::set<std::string>& out);

// Deep copy with state-variable names substituted (used by symmetry tests
// and injector templates). Bound names are untouched.
ExprPtr rename_vars(const Expr& e,
                    const std::vector<std::pair<std::string, std::string>>& map);

// Canonical surface-syntax rendering (also used by the pretty printer).
std::string expr_str(const Expr& e);

}  // namespace rgspec

#endif  // RGSPEC_AST_HPP_
