#include "rgspec/ast.hpp"

#include <sstream>

namespace rgspec {

const char* cmp_str(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "<>";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

namespace {
std::shared_ptr<Expr> node(ExprKind k, SourceSpan sp) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->span = std::move(sp);
  return e;
}
}  // namespace

ExprPtr mk_int(int64_t v, SourceSpan sp) {
  auto e = node(ExprKind::IntLit, std::move(sp));
  e->int_val = v;
  return e;
}

ExprPtr mk_bool(bool v, SourceSpan sp) {
  auto e = node(ExprKind::BoolLit, std::move(sp));
  e->bool_val = v;
  return e;
}

ExprPtr mk_set(uint64_t mask, SourceSpan sp) {
  auto e = node(ExprKind::SetLit, std::move(sp));
  e->set_val = mask;
  return e;
}

ExprPtr mk_ref(std::string name, bool is_old, SourceSpan sp) {
  auto e = node(ExprKind::Ref, std::move(sp));
  e->name = std::move(name);
  e->is_old = is_old;
  return e;
}

ExprPtr mk_unary(ExprKind k, ExprPtr a, SourceSpan sp) {
  auto e = node(k, std::move(sp));
  e->a = std::move(a);
  return e;
}

ExprPtr mk_bin(ExprKind k, ExprPtr a, ExprPtr b, SourceSpan sp) {
  auto e = node(k, std::move(sp));
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

ExprPtr mk_cmp(CmpOp op, ExprPtr a, ExprPtr b, SourceSpan sp) {
  auto e = node(ExprKind::Cmp, std::move(sp));
  e->cmp = op;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

ExprPtr mk_quant(bool forall, std::string binder, ExprPtr domain, ExprPtr body,
                 SourceSpan sp) {
  auto e = node(forall ? ExprKind::Forall : ExprKind::Exists, std::move(sp));
  e->name = std::move(binder);
  e->a = std::move(domain);
  e->b = std::move(body);
  return e;
}

ExprPtr mk_conj(const std::vector<ExprPtr>& parts) {
  if (parts.empty()) return mk_bool(true);
  ExprPtr acc = parts[0];
  for (size_t i = 1; i < parts.size(); ++i)
    acc = mk_bin(ExprKind::And, acc, parts[i], join(acc->span, parts[i]->span));
  return acc;
}

bool is_const_true(const Expr& e) {
  return e.kind == ExprKind::BoolLit && e.bool_val;
}

bool is_const_false(const Expr& e) {
  return e.kind == ExprKind::BoolLit && !e.bool_val;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::IntLit: return a.int_val == b.int_val;
    case ExprKind::BoolLit: return a.bool_val == b.bool_val;
    case ExprKind::SetLit: return a.set_val == b.set_val;
    case ExprKind::Ref: return a.name == b.name && a.is_old == b.is_old;
    case ExprKind::Cmp:
      if (a.cmp != b.cmp) return false;
      break;
    case ExprKind::Forall:
    case ExprKind::Exists:
      if (a.name != b.name) return false;
      break;
    default: break;
  }
  if ((a.a == nullptr) != (b.a == nullptr)) return false;
  if ((a.b == nullptr) != (b.b == nullptr)) return false;
  if (a.a && !structurally_equal(*a.a, *b.a)) return false;
  if (a.b && !structurally_equal(*a.b, *b.b)) return false;
  return true;
}

void collect_state_vars(const Expr& e, std::set<std::string>& out) {
  if (e.kind == ExprKind::Ref) {
    // Bound names resolve to BoundVar; unresolved trees conservatively
    // report every name that is not shadowed by a binder (handled below by
    // resolution status when available).
    if (e.ref_kind == RefKind::StateVar || e.ref_kind == RefKind::Unresolved)
      out.insert(e.name);
    return;
  }
  if (e.a) collect_state_vars(*e.a, out);
  if (e.b) {
    if (e.kind == ExprKind::Forall || e.kind == ExprKind::Exists) {
      std::set<std::string> inner;
      collect_state_vars(*e.b, inner);
      inner.erase(e.name);
      out.insert(inner.begin(), inner.end());
    } else {
      collect_state_vars(*e.b, out);
    }
  }
}

ExprPtr rename_vars(
    const Expr& e,
    const std::vector<std::pair<std::string, std::string>>& map) {
  auto n = std::make_shared<Expr>(e);
  n->ref_kind = RefKind::Unresolved;
  n->ref_index = -1;
  if (e.kind == ExprKind::Ref && e.ref_kind != RefKind::BoundVar &&
      e.ref_kind != RefKind::TokenLit) {
    for (const auto& [from, to] : map)
      if (e.name == from) {
        n->name = to;
        break;
      }
  }
  if (e.a) n->a = rename_vars(*e.a, map);
  if (e.b) n->b = rename_vars(*e.b, map);
  return n;
}

namespace {

// Precedence levels for printing; higher binds tighter.
int prec(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Implies: return 1;
    case ExprKind::Or: return 2;
    case ExprKind::And: return 3;
    case ExprKind::Not: return 4;
    case ExprKind::Cmp:
    case ExprKind::In: return 5;
    case ExprKind::Add:
    case ExprKind::Sub: return 6;
    case ExprKind::Neg: return 7;
    default: return 8;
  }
}

void print(const Expr& e, std::ostringstream& os);

// Parenthesization preserves tree shape exactly: the round-trip law asks
// for structural, not just semantic, equality.
void child(const Expr& parent, const Expr& c, bool right,
           std::ostringstream& os) {
  int pp = prec(parent), cp = prec(c);
  bool parens = cp < pp;
  if (cp == pp) {
    switch (parent.kind) {
      case ExprKind::Implies: parens = !right; break;         // right-assoc
      case ExprKind::Cmp:
      case ExprKind::In: parens = true; break;                // non-assoc
      case ExprKind::And:
      case ExprKind::Or:
      case ExprKind::Add:
      case ExprKind::Sub: parens = right; break;              // left-assoc
      default: parens = false; break;
    }
  }
  if (parens) os << "(";
  print(c, os);
  if (parens) os << ")";
}

void print(const Expr& e, std::ostringstream& os) {
  switch (e.kind) {
    case ExprKind::IntLit: os << e.int_val; return;
    case ExprKind::BoolLit: os << (e.bool_val ? "true" : "false"); return;
    case ExprKind::SetLit: {
      os << "{";
      bool first = true;
      for (int i = 0; i < 64; ++i)
        if (e.set_val & (uint64_t{1} << i)) {
          if (!first) os << ", ";
          os << i;
          first = false;
        }
      os << "}";
      return;
    }
    case ExprKind::Ref:
      if (e.is_old) os << "old(" << e.name << ")";
      else os << e.name;
      return;
    case ExprKind::Neg:
      os << "-";
      child(e, *e.a, false, os);
      return;
    case ExprKind::Not:
      os << "!";
      child(e, *e.a, false, os);
      return;
    case ExprKind::Add:
    case ExprKind::Sub:
      child(e, *e.a, false, os);
      os << (e.kind == ExprKind::Add ? " + " : " - ");
      child(e, *e.b, true, os);
      return;
    case ExprKind::Cmp:
      child(e, *e.a, false, os);
      os << " " << cmp_str(e.cmp) << " ";
      child(e, *e.b, true, os);
      return;
    case ExprKind::In:
      child(e, *e.a, false, os);
      os << " in ";
      child(e, *e.b, true, os);
      return;
    case ExprKind::And:
    case ExprKind::Or:
      child(e, *e.a, false, os);
      os << (e.kind == ExprKind::And ? " && " : " || ");
      child(e, *e.b, true, os);
      return;
    case ExprKind::Implies:
      child(e, *e.a, false, os);
      os << " => ";
      child(e, *e.b, true, os);
      return;
    case ExprKind::Forall:
    case ExprKind::Exists:
      os << "(" << (e.kind == ExprKind::Forall ? "forall " : "exists ")
         << e.name << " in ";
      print(*e.a, os);
      os << " . ";
      print(*e.b, os);
      os << ")";
      return;
    case ExprKind::Gcd:
      os << "gcd(";
      print(*e.a, os);
      os << ", ";
      print(*e.b, os);
      os << ")";
      return;
    case ExprKind::MinOf:
      os << "min(";
      print(*e.a, os);
      os << ")";
      return;
    case ExprKind::Abs:
      os << "abs(";
      print(*e.a, os);
      os << ")";
      return;
    case ExprKind::Card:
      os << "card(";
      print(*e.a, os);
      os << ")";
      return;
  }
}

}  // namespace

std::string expr_str(const Expr& e) {
  std::ostringstream os;
  print(e, os);
  return os.str();
}

}  // namespace rgspec
