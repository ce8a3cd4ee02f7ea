#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "layout/address.hpp"

namespace layout::formula {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberLit {
  double value = 0;
};

struct TextLit {
  std::string value;
};

/// One axis part of an A1 reference.
///   Absolute  - "$B" / "$8": fixed 1-based index
///   Relative  - "B" / "8": 1-based index as written
///   Offset    - relative part rewritten as a signed delta from a host cell
struct RefPart {
  enum class Mode { Absolute, Relative, Offset };
  Mode mode = Mode::Relative;
  int value = 0;

  friend constexpr bool operator==(const RefPart&, const RefPart&) = default;
};

struct CellRef {
  RefPart column;
  RefPart row;

  friend constexpr bool operator==(const CellRef&, const CellRef&) = default;
};

/// Corner-normalized at parse time: top-left corner first.
struct RangeRef {
  CellRef first;
  CellRef second;

  friend constexpr bool operator==(const RangeRef&, const RangeRef&) = default;
};

struct FunctionCall {
  std::string name;  // uppercased
  std::vector<ExprPtr> args;
};

enum class BinaryOp {
  Add,
  Subtract,
  Multiply,
  Divide,
  Power,
  Concat,
  Equal,
  NotEqual,
  Less,
  Greater,
  LessEqual,
  GreaterEqual,
};

/// Plus/Minus are prefix, Percent is postfix ("50%").
enum class UnaryOp { Plus, Minus, Percent };

struct Binary {
  BinaryOp op{};
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Unary {
  UnaryOp op{};
  ExprPtr operand;
};

struct Paren {
  ExprPtr inner;
};

struct Expr {
  std::variant<NumberLit, TextLit, CellRef, RangeRef, FunctionCall, Binary, Unary, Paren>
      node;
};

bool equal(const Expr& a, const Expr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);

/// Parses an A1-style formula (optional leading "="). Precedence, loosest to
/// tightest: comparisons, "&", "+ -", "* /", prefix "+ -", "^" (right
/// associative), postfix "%". Function names are open vocabulary; "," and
/// ";" both separate arguments; number literals use "." as decimal mark.
/// Throws FormulaError with a byte offset on bad input.
ExprPtr parse_formula(std::string_view text);

/// Pretty-prints a parsed formula (no leading "="). For ASTs produced by
/// parse_formula, parse(render(ast)) == ast.
std::string render(const Expr& expr);
std::string render(const ExprPtr& expr);

/// A formula whose relative reference parts have been rewritten as offsets
/// from the host cell. Two cells created by copy/pasting one formula have
/// equal NormalizedFormula values.
struct NormalizedFormula {
  ExprPtr root;

  friend bool operator==(const NormalizedFormula& a, const NormalizedFormula& b) {
    return equal(a.root, b.root);
  }
};

/// Rewrites Relative parts to Offset deltas against `origin`; Absolute and
/// already-Offset parts are untouched, so the rewrite is idempotent.
NormalizedFormula normalize_relative(const ExprPtr& ast, Address origin);

/// True iff the two formulas are identical after offset normalization
/// against their own host cells.
bool copy_equivalent(const ExprPtr& f1, Address origin1, const ExprPtr& f2,
                     Address origin2);

/// Skeleton equality: every literal and every reference is a wildcard,
/// parentheses are transparent; only the operator/function shape counts.
bool structurally_equivalent(const ExprPtr& f1, const ExprPtr& f2);

}  // namespace layout::formula
