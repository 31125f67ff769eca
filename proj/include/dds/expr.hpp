#pragma once

#include <cstdint>
#include <vector>

#include "dds/domain.hpp"

namespace dds {

// Integer expression AST for per-component update rules. Single-sorted:
// comparisons and logical operators yield 0/1, logical operands are
// normalized by a nonzero test. Total on integers (no division).
struct Expr {
  enum class Op {
    lit,
    var,
    add,
    sub,
    mul,
    neg,
    min_fn,
    max_fn,
    if_fn,
    lt,
    le,
    gt,
    ge,
    eq,
    ne,
    log_and,
    log_or,
    log_not,
  };

  Op op = Op::lit;
  std::int64_t value = 0;  // lit
  int var_index = 0;       // var, 0-based coordinate
  std::vector<Expr> kids;

  static Expr literal(std::int64_t v) {
    Expr e;
    e.op = Op::lit;
    e.value = v;
    return e;
  }
  static Expr variable(int idx) {
    Expr e;
    e.op = Op::var;
    e.var_index = idx;
    return e;
  }
  static Expr make(Op op, std::vector<Expr> kids) {
    Expr e;
    e.op = op;
    e.kids = std::move(kids);
    return e;
  }

  int depth() const {
    int d = 0;
    for (const Expr& k : kids) d = std::max(d, k.depth());
    return d + 1;
  }
};

namespace detail {
// Saturating fold keeps evaluation total even on absurd literals.
inline std::int64_t sat(__int128 v) {
  if (v > INT64_MAX) return INT64_MAX;
  if (v < INT64_MIN) return INT64_MIN;
  return static_cast<std::int64_t>(v);
}
}  // namespace detail

inline std::int64_t eval_expr(const Expr& e, const State& x) {
  using Op = Expr::Op;
  switch (e.op) {
    case Op::lit: return e.value;
    case Op::var: return x[e.var_index];
    case Op::add:
      return detail::sat(static_cast<__int128>(eval_expr(e.kids[0], x)) +
                         eval_expr(e.kids[1], x));
    case Op::sub:
      return detail::sat(static_cast<__int128>(eval_expr(e.kids[0], x)) -
                         eval_expr(e.kids[1], x));
    case Op::mul:
      return detail::sat(static_cast<__int128>(eval_expr(e.kids[0], x)) *
                         eval_expr(e.kids[1], x));
    case Op::neg:
      return detail::sat(-static_cast<__int128>(eval_expr(e.kids[0], x)));
    case Op::min_fn:
      return std::min(eval_expr(e.kids[0], x), eval_expr(e.kids[1], x));
    case Op::max_fn:
      return std::max(eval_expr(e.kids[0], x), eval_expr(e.kids[1], x));
    case Op::if_fn:
      return eval_expr(e.kids[0], x) != 0 ? eval_expr(e.kids[1], x)
                                          : eval_expr(e.kids[2], x);
    case Op::lt: return eval_expr(e.kids[0], x) < eval_expr(e.kids[1], x);
    case Op::le: return eval_expr(e.kids[0], x) <= eval_expr(e.kids[1], x);
    case Op::gt: return eval_expr(e.kids[0], x) > eval_expr(e.kids[1], x);
    case Op::ge: return eval_expr(e.kids[0], x) >= eval_expr(e.kids[1], x);
    case Op::eq: return eval_expr(e.kids[0], x) == eval_expr(e.kids[1], x);
    case Op::ne: return eval_expr(e.kids[0], x) != eval_expr(e.kids[1], x);
    case Op::log_and:
      return (eval_expr(e.kids[0], x) != 0) && (eval_expr(e.kids[1], x) != 0);
    case Op::log_or:
      return (eval_expr(e.kids[0], x) != 0) || (eval_expr(e.kids[1], x) != 0);
    case Op::log_not: return eval_expr(e.kids[0], x) == 0;
  }
  return 0;
}

}  // namespace dds
