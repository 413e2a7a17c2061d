#include "rgspec/eval.hpp"

#include <numeric>
#include <vector>

namespace rgspec {

namespace {

struct Evaluator {
  const State& before;
  const State& after;
  std::vector<int64_t> bound;  // quantifier bindings, innermost last

  Value eval(const Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit: return Value::of_int(e.int_val);
      case ExprKind::BoolLit: return Value::of_bool(e.bool_val);
      case ExprKind::SetLit: return Value::of_set(e.set_val);
      case ExprKind::Ref: return eval_ref(e);
      case ExprKind::Neg: {
        int64_t v = eval(*e.a).as_int();
        if (v == INT64_MIN) throw EvalError(e.span, "integer overflow");
        return Value::of_int(-v);
      }
      case ExprKind::Abs: {
        int64_t v = eval(*e.a).as_int();
        if (v == INT64_MIN) throw EvalError(e.span, "integer overflow");
        return Value::of_int(v < 0 ? -v : v);
      }
      case ExprKind::Add:
      case ExprKind::Sub: {
        int64_t l = eval(*e.a).as_int();
        int64_t r = eval(*e.b).as_int();
        int64_t out = 0;
        bool ovf = (e.kind == ExprKind::Add)
                       ? __builtin_add_overflow(l, r, &out)
                       : __builtin_sub_overflow(l, r, &out);
        if (ovf) throw EvalError(e.span, "integer overflow");
        return Value::of_int(out);
      }
      case ExprKind::Cmp: return eval_cmp(e);
      case ExprKind::In: {
        int64_t v = eval(*e.a).as_int();
        uint64_t s = eval(*e.b).as_set();
        bool in = v >= 0 && v < 64 && (s & (uint64_t{1} << v));
        return Value::of_bool(in);
      }
      case ExprKind::Not: return Value::of_bool(!eval(*e.a).as_bool());
      case ExprKind::And:
        return Value::of_bool(eval(*e.a).as_bool() && eval(*e.b).as_bool());
      case ExprKind::Or:
        return Value::of_bool(eval(*e.a).as_bool() || eval(*e.b).as_bool());
      case ExprKind::Implies:
        return Value::of_bool(!eval(*e.a).as_bool() || eval(*e.b).as_bool());
      case ExprKind::Forall:
      case ExprKind::Exists: {
        uint64_t s = eval(*e.a).as_set();
        bool forall = e.kind == ExprKind::Forall;
        for (int i = 0; i < 64; ++i) {
          if (!(s & (uint64_t{1} << i))) continue;
          bound.push_back(i);
          bool v = eval(*e.b).as_bool();
          bound.pop_back();
          if (forall && !v) return Value::of_bool(false);
          if (!forall && v) return Value::of_bool(true);
        }
        return Value::of_bool(forall);
      }
      case ExprKind::Gcd: {
        int64_t l = eval(*e.a).as_int();
        int64_t r = eval(*e.b).as_int();
        if (l < 0 || r < 0)
          throw EvalError(e.span, "gcd requires nonnegative arguments");
        return Value::of_int(std::gcd(l, r));  // gcd(0, k) = k
      }
      case ExprKind::MinOf: {
        uint64_t s = eval(*e.a).as_set();
        if (s == 0) throw EvalError(e.span, "min of empty set");
        return Value::of_int(__builtin_ctzll(s));
      }
      case ExprKind::Card: {
        uint64_t s = eval(*e.a).as_set();
        return Value::of_int(__builtin_popcountll(s));
      }
    }
    throw EvalError(e.span, "unevaluable expression");
  }

  Value eval_ref(const Expr& e) {
    switch (e.ref_kind) {
      case RefKind::BoundVar:
        return Value::of_int(bound[bound.size() - 1 - e.ref_index]);
      case RefKind::StateVar:
        return e.is_old ? before.at(e.ref_index) : after.at(e.ref_index);
      case RefKind::TokenLit: return Value::of_token(e.ref_index);
      case RefKind::Unresolved:
        throw EvalError(e.span, "unresolved reference '" + e.name +
                                    "' (expression was not type-checked)");
    }
    throw EvalError(e.span, "bad reference");
  }

  Value eval_cmp(const Expr& e) {
    Value l = eval(*e.a);
    Value r = eval(*e.b);
    switch (e.cmp) {
      case CmpOp::Eq: return Value::of_bool(l.num == r.num);
      case CmpOp::Ne: return Value::of_bool(l.num != r.num);
      case CmpOp::Lt: return Value::of_bool(l.num < r.num);
      case CmpOp::Le: return Value::of_bool(l.num <= r.num);
      case CmpOp::Gt: return Value::of_bool(l.num > r.num);
      case CmpOp::Ge: return Value::of_bool(l.num >= r.num);
    }
    throw EvalError(e.span, "bad comparison");
  }
};

}  // namespace

Value eval_expr(const Expr& e, const StatePair& pair) {
  Evaluator ev{pair.before, pair.after, {}};
  return ev.eval(e);
}

bool eval_predicate(const Expr& pred, const StatePair& pair) {
  return eval_expr(pred, pair).as_bool();
}

bool eval_predicate(const Expr& pred, const State& before,
                    const State& after) {
  Evaluator ev{before, after, {}};
  return ev.eval(pred).as_bool();
}

bool eval_state_predicate(const Expr& pred, const State& s) {
  Evaluator ev{s, s, {}};
  return ev.eval(pred).as_bool();
}

Value eval_expr_single(const Expr& e, const State& s) {
  Evaluator ev{s, s, {}};
  return ev.eval(e);
}

}  // namespace rgspec
