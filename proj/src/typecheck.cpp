#include "rgspec/typecheck.hpp"

#include <vector>

namespace rgspec {

namespace {

struct Checker {
  const StateDecl& decl;
  Epoch epoch;
  Diagnostics diags;
  std::vector<std::string> bound;  // innermost last

  void error(const Expr& e, const std::string& msg) {
    diags.push_back({Severity::Error, e.span, msg});
  }

  std::optional<Ty> expect(const Expr& e, std::optional<Ty> got, Ty want,
                           const char* what) {
    if (!got) return std::nullopt;
    if (*got != want) {
      error(e, std::string(what) + " expects " + ty_name(want) + ", got " +
                   ty_name(*got));
      return std::nullopt;
    }
    return want;
  }

  std::optional<Ty> check(const Expr& e) {
    auto result = check_inner(e);
    if (result) e.type = *result;
    return result;
  }

  std::optional<Ty> check_inner(const Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit: return Ty::Int;
      case ExprKind::BoolLit: return Ty::Bool;
      case ExprKind::SetLit: return Ty::Set;
      case ExprKind::Ref: return check_ref(e);
      case ExprKind::Neg:
      case ExprKind::Abs:
        return expect(e, check(*e.a), Ty::Int,
                      e.kind == ExprKind::Neg ? "unary minus" : "abs");
      case ExprKind::Add:
      case ExprKind::Sub: {
        auto l = expect(*e.a, check(*e.a), Ty::Int, "arithmetic");
        auto r = expect(*e.b, check(*e.b), Ty::Int, "arithmetic");
        if (!l || !r) return std::nullopt;
        return Ty::Int;
      }
      case ExprKind::Cmp: return check_cmp(e);
      case ExprKind::In: {
        auto l = expect(*e.a, check(*e.a), Ty::Int, "membership");
        auto r = expect(*e.b, check(*e.b), Ty::Set, "membership");
        if (!l || !r) return std::nullopt;
        return Ty::Bool;
      }
      case ExprKind::Not:
        return expect(*e.a, check(*e.a), Ty::Bool, "negation");
      case ExprKind::And:
      case ExprKind::Or:
      case ExprKind::Implies: {
        auto l = expect(*e.a, check(*e.a), Ty::Bool, "logical operator");
        auto r = expect(*e.b, check(*e.b), Ty::Bool, "logical operator");
        if (!l || !r) return std::nullopt;
        return Ty::Bool;
      }
      case ExprKind::Forall:
      case ExprKind::Exists: return check_quant(e);
      case ExprKind::Gcd: {
        auto l = expect(*e.a, check(*e.a), Ty::Int, "gcd");
        auto r = expect(*e.b, check(*e.b), Ty::Int, "gcd");
        if (!l || !r) return std::nullopt;
        return Ty::Int;
      }
      case ExprKind::MinOf:
        if (!expect(*e.a, check(*e.a), Ty::Set, "min")) return std::nullopt;
        return Ty::Int;
      case ExprKind::Card:
        if (!expect(*e.a, check(*e.a), Ty::Set, "card")) return std::nullopt;
        return Ty::Int;
    }
    return std::nullopt;
  }

  std::optional<Ty> check_ref(const Expr& e) {
    // Innermost binding shadows nothing by construction (freshness checked
    // at the quantifier); still resolve innermost-first.
    for (int i = static_cast<int>(bound.size()) - 1; i >= 0; --i) {
      if (bound[i] == e.name) {
        if (e.is_old) {
          error(e, "old(...) cannot apply to quantifier-bound name '" +
                       e.name + "'");
          return std::nullopt;
        }
        e.ref_kind = RefKind::BoundVar;
        e.ref_index = static_cast<int>(bound.size()) - 1 - i;
        return Ty::Int;
      }
    }
    int vi = decl.index_of(e.name);
    if (vi >= 0) {
      if (e.is_old && epoch == Epoch::Single) {
        error(e, "old(" + e.name + ") used in a single-epoch context");
        return std::nullopt;
      }
      e.ref_kind = RefKind::StateVar;
      e.ref_index = vi;
      return decl.vars[vi].ty;
    }
    int tid = decl.token_id(e.name);
    if (tid >= 0) {
      if (e.is_old) {
        error(e, "old(...) cannot apply to enum token '" + e.name + "'");
        return std::nullopt;
      }
      e.ref_kind = RefKind::TokenLit;
      e.ref_index = tid;
      return Ty::Token;
    }
    error(e, "undeclared name '" + e.name + "'");
    return std::nullopt;
  }

  std::optional<Ty> check_cmp(const Expr& e) {
    auto l = check(*e.a);
    auto r = check(*e.b);
    if (!l || !r) return std::nullopt;
    if (*l != *r) {
      error(e, std::string("comparison between ") + ty_name(*l) + " and " +
                   ty_name(*r));
      return std::nullopt;
    }
    if (e.cmp != CmpOp::Eq && e.cmp != CmpOp::Ne && *l != Ty::Int) {
      error(e, std::string("ordering comparison requires int, got ") +
                   ty_name(*l));
      return std::nullopt;
    }
    if (*l == Ty::Token) check_token_members(e);
    return Ty::Bool;
  }

  // A token literal compared against an enum variable must be one of that
  // variable's members; catches OK-vs-{ON,OFF} typos.
  void check_token_members(const Expr& e) {
    const Expr* var = nullptr;
    const Expr* lit = nullptr;
    for (const Expr* side : {e.a.get(), e.b.get()}) {
      if (side->kind == ExprKind::Ref && side->ref_kind == RefKind::StateVar)
        var = side;
      if (side->kind == ExprKind::Ref && side->ref_kind == RefKind::TokenLit)
        lit = side;
    }
    if (!var || !lit) return;
    const auto& dom = decl.vars[var->ref_index];
    for (int id : dom.token_ids)
      if (id == lit->ref_index) return;
    error(*lit, "'" + lit->name + "' is not a member of the enum of '" +
                    var->name + "'");
  }

  std::optional<Ty> check_quant(const Expr& e) {
    if (!expect(*e.a, check(*e.a), Ty::Set, "quantifier domain"))
      return std::nullopt;
    if (decl.index_of(e.name) >= 0 || decl.token_id(e.name) >= 0) {
      error(e, "quantifier binds non-fresh name '" + e.name + "'");
      return std::nullopt;
    }
    for (const auto& b : bound)
      if (b == e.name) {
        error(e, "quantifier binds non-fresh name '" + e.name + "'");
        return std::nullopt;
      }
    bound.push_back(e.name);
    auto body = expect(*e.b, check(*e.b), Ty::Bool, "quantifier body");
    bound.pop_back();
    if (!body) return std::nullopt;
    return Ty::Bool;
  }
};

}  // namespace

TypeResult type_check(const Expr& e, const StateDecl& decl, Epoch epoch) {
  Checker c{decl, epoch, {}, {}};
  auto t = c.check(e);
  return {t, std::move(c.diags)};
}

Diagnostics check_predicate(const Expr& e, const StateDecl& decl,
                            Epoch epoch) {
  auto r = type_check(e, decl, epoch);
  if (r.type && *r.type != Ty::Bool)
    r.diags.push_back({Severity::Error, e.span,
                       "predicate must be bool, got " + std::string(ty_name(*r.type))});
  return r.diags;
}

}  // namespace rgspec
