#include "layout/formula.hpp"

#include <array>
#include <cassert>
#include <cctype>
#include <charconv>
#include <utility>

#include "layout/errors.hpp"

namespace layout::formula {

namespace {

template <typename T>
ExprPtr make(T node) {
  return std::make_shared<Expr>(Expr{std::move(node)});
}

std::string_view op_token(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Subtract: return "-";
    case BinaryOp::Multiply: return "*";
    case BinaryOp::Divide: return "/";
    case BinaryOp::Power: return "^";
    case BinaryOp::Concat: return "&";
    case BinaryOp::Equal: return "=";
    case BinaryOp::NotEqual: return "<>";
    case BinaryOp::Less: return "<";
    case BinaryOp::Greater: return ">";
    case BinaryOp::LessEqual: return "<=";
    case BinaryOp::GreaterEqual: return ">=";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : src_(text) {
    if (!src_.empty() && src_[0] == '=') pos_ = 1;
  }

  ExprPtr parse() {
    if (pos_ >= src_.size()) throw FormulaError("empty formula", pos_);
    ExprPtr expr = comparison();
    skip_space();
    if (pos_ != src_.size()) throw FormulaError("unexpected trailing input", pos_);
    return expr;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr comparison() {
    ExprPtr lhs = concat();
    for (;;) {
      skip_space();
      BinaryOp op;
      if (match("<>")) op = BinaryOp::NotEqual;
      else if (match("<=")) op = BinaryOp::LessEqual;
      else if (match(">=")) op = BinaryOp::GreaterEqual;
      else if (match("<")) op = BinaryOp::Less;
      else if (match(">")) op = BinaryOp::Greater;
      else if (match("=")) op = BinaryOp::Equal;
      else break;
      lhs = make(Binary{op, lhs, concat()});
    }
    return lhs;
  }

  ExprPtr concat() {
    ExprPtr lhs = additive();
    while (peek() == '&') {
      ++pos_;
      lhs = make(Binary{BinaryOp::Concat, lhs, additive()});
    }
    return lhs;
  }

  ExprPtr additive() {
    ExprPtr lhs = term();
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      lhs = make(Binary{c == '+' ? BinaryOp::Add : BinaryOp::Subtract, lhs, term()});
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      char c = peek();
      if (c != '*' && c != '/') break;
      ++pos_;
      lhs = make(Binary{c == '*' ? BinaryOp::Multiply : BinaryOp::Divide, lhs, unary()});
    }
    return lhs;
  }

  // "^" binds tighter than prefix sign: -2^2 parses as -(2^2).
  ExprPtr unary() {
    char c = peek();
    if (c == '+' || c == '-') {
      ++pos_;
      return make(Unary{c == '+' ? UnaryOp::Plus : UnaryOp::Minus, unary()});
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = postfix();
    if (peek() == '^') {
      ++pos_;
      return make(Binary{BinaryOp::Power, base, unary()});  // right associative
    }
    return base;
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    while (peek() == '%') {
      ++pos_;
      e = make(Unary{UnaryOp::Percent, e});
    }
    return e;
  }

  ExprPtr primary() {
    char c = peek();
    if (c == '\0') throw FormulaError("unexpected end of formula", pos_);
    if (c == '(') {
      ++pos_;
      ExprPtr inner = comparison();
      if (!consume(')')) throw FormulaError("expected ')'", pos_);
      return make(Paren{inner});
    }
    if (c == '"') return string_literal();
    if ((c >= '0' && c <= '9') || c == '.') return number_literal();
    if (c == '$' || is_letter(c)) return reference_or_call();
    throw FormulaError(std::string("unexpected character '") + c + "'", pos_);
  }

  static bool is_letter(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_char(char c) {
    return is_letter(c) || is_digit(c) || c == '_' || c == '.';
  }

  ExprPtr string_literal() {
    std::size_t start = pos_;
    ++pos_;  // opening quote
    std::string value;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '"') {
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '"') {
          value.push_back('"');
          pos_ += 2;
          continue;
        }
        ++pos_;
        return make(TextLit{std::move(value)});
      }
      value.push_back(c);
      ++pos_;
    }
    throw FormulaError("unterminated string literal", start);
  }

  ExprPtr number_literal() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && is_digit(src_[pos_])) {
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      } else {
        pos_ = mark;  // "e" was not an exponent
      }
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || ptr != src_.data() + pos_) {
      throw FormulaError("bad number literal", start);
    }
    return make(NumberLit{value});
  }

  // A "$"-prefixed token is always a reference. A bare identifier followed
  // by "(" is a function call; otherwise it must re-lex as an A1 reference.
  ExprPtr reference_or_call() {
    std::size_t start = pos_;
    if (src_[pos_] != '$') {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '(') {
        std::string name(src_.substr(start, pos_ - start));
        for (char& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        ++pos_;  // '('
        std::vector<ExprPtr> args;
        if (peek() != ')') {
          args.push_back(comparison());
          while (peek() == ',' || peek() == ';') {
            ++pos_;
            args.push_back(comparison());
          }
        }
        if (!consume(')')) throw FormulaError("expected ')' in argument list", pos_);
        return make(FunctionCall{std::move(name), std::move(args)});
      }
      pos_ = start;
    }
    CellRef first = cell_ref();
    if (peek() == ':') {
      ++pos_;
      skip_space();
      CellRef second = cell_ref();
      return make(normalized_range(first, second));
    }
    return make(first);
  }

  CellRef cell_ref() {
    std::size_t start = pos_;
    CellRef ref;
    ref.column.mode = consume_dollar() ? RefPart::Mode::Absolute : RefPart::Mode::Relative;
    std::size_t letters_start = pos_;
    while (pos_ < src_.size() && is_letter(src_[pos_])) ++pos_;
    auto col = column_index(src_.substr(letters_start, pos_ - letters_start));
    if (!col) throw FormulaError("expected cell reference", start);
    ref.column.value = *col;
    ref.row.mode = consume_dollar() ? RefPart::Mode::Absolute : RefPart::Mode::Relative;
    std::size_t digits_start = pos_;
    long long row = 0;
    while (pos_ < src_.size() && is_digit(src_[pos_])) {
      row = row * 10 + (src_[pos_] - '0');
      if (row > 100'000'000) throw FormulaError("row index out of range", digits_start);
      ++pos_;
    }
    if (pos_ == digits_start || row < 1) {
      throw FormulaError("expected row number in cell reference", pos_);
    }
    ref.row.value = static_cast<int>(row);
    return ref;
  }

  bool consume_dollar() {
    if (pos_ < src_.size() && src_[pos_] == '$') {
      ++pos_;
      return true;
    }
    return false;
  }

  // Top-left corner first; column parts and row parts are reordered
  // independently by their written indices, keeping their "$" markers.
  static RangeRef normalized_range(CellRef a, CellRef b) {
    RangeRef range;
    const bool swap_cols = b.column.value < a.column.value;
    const bool swap_rows = b.row.value < a.row.value;
    range.first.column = swap_cols ? b.column : a.column;
    range.second.column = swap_cols ? a.column : b.column;
    range.first.row = swap_rows ? b.row : a.row;
    range.second.row = swap_rows ? a.row : b.row;
    return range;
  }

  std::string_view src_;
  std::size_t pos_ = 0;

  bool match(std::string_view token) {
    skip_space();
    if (src_.substr(pos_).starts_with(token)) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
};

}  // namespace

ExprPtr parse_formula(std::string_view text) {
  if (text.empty()) throw FormulaError("empty formula", 0);
  return Parser(text).parse();
}

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&b](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, NumberLit>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, TextLit>) {
          return lhs.value == rhs.value;
        } else if constexpr (std::is_same_v<T, CellRef>) {
          return lhs == rhs;
        } else if constexpr (std::is_same_v<T, RangeRef>) {
          return lhs == rhs;
        } else if constexpr (std::is_same_v<T, FunctionCall>) {
          if (lhs.name != rhs.name || lhs.args.size() != rhs.args.size()) return false;
          for (std::size_t i = 0; i < lhs.args.size(); ++i) {
            if (!equal(lhs.args[i], rhs.args[i])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Binary>) {
          return lhs.op == rhs.op && equal(lhs.lhs, rhs.lhs) && equal(lhs.rhs, rhs.rhs);
        } else if constexpr (std::is_same_v<T, Unary>) {
          return lhs.op == rhs.op && equal(lhs.operand, rhs.operand);
        } else {
          return equal(lhs.inner, std::get<Paren>(b.node).inner);
        }
      },
      a.node);
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return equal(*a, *b);
}

namespace {

void render_to(const Expr& expr, std::string& out);

void render_number_lit(double value, std::string& out) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec == std::errc()) out.append(buf.data(), ptr);
}

void render_ref_part(const RefPart& part, bool is_column, std::string& out) {
  switch (part.mode) {
    case RefPart::Mode::Absolute:
      out.push_back('$');
      [[fallthrough]];
    case RefPart::Mode::Relative:
      out += is_column ? column_letters(part.value) : std::to_string(part.value);
      break;
    case RefPart::Mode::Offset:
      // Not valid A1 syntax; only reached when printing normalized formulas
      // for diagnostics.
      out += is_column ? "C[" : "R[";
      out += std::to_string(part.value);
      out.push_back(']');
      break;
  }
}

void render_ref(const CellRef& ref, std::string& out) {
  render_ref_part(ref.column, true, out);
  render_ref_part(ref.row, false, out);
}

void render_to(const Expr& expr, std::string& out) {
  std::visit(
      [&out](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, NumberLit>) {
          render_number_lit(node.value, out);
        } else if constexpr (std::is_same_v<T, TextLit>) {
          out.push_back('"');
          for (char c : node.value) {
            out.push_back(c);
            if (c == '"') out.push_back('"');
          }
          out.push_back('"');
        } else if constexpr (std::is_same_v<T, CellRef>) {
          render_ref(node, out);
        } else if constexpr (std::is_same_v<T, RangeRef>) {
          render_ref(node.first, out);
          out.push_back(':');
          render_ref(node.second, out);
        } else if constexpr (std::is_same_v<T, FunctionCall>) {
          out += node.name;
          out.push_back('(');
          for (std::size_t i = 0; i < node.args.size(); ++i) {
            if (i > 0) out.push_back(',');
            render_to(*node.args[i], out);
          }
          out.push_back(')');
        } else if constexpr (std::is_same_v<T, Binary>) {
          render_to(*node.lhs, out);
          out += op_token(node.op);
          render_to(*node.rhs, out);
        } else if constexpr (std::is_same_v<T, Unary>) {
          if (node.op == UnaryOp::Percent) {
            render_to(*node.operand, out);
            out.push_back('%');
          } else {
            out.push_back(node.op == UnaryOp::Plus ? '+' : '-');
            render_to(*node.operand, out);
          }
        } else {
          out.push_back('(');
          render_to(*node.inner, out);
          out.push_back(')');
        }
      },
      expr.node);
}

RefPart normalize_part(const RefPart& part, int origin_index) {
  if (part.mode != RefPart::Mode::Relative) return part;
  return RefPart{RefPart::Mode::Offset, part.value - origin_index};
}

CellRef normalize_ref(const CellRef& ref, Address origin) {
  return CellRef{normalize_part(ref.column, origin.column),
                 normalize_part(ref.row, origin.row)};
}

ExprPtr normalize_expr(const ExprPtr& expr, Address origin) {
  return std::visit(
      [&](const auto& node) -> ExprPtr {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, CellRef>) {
          return make(normalize_ref(node, origin));
        } else if constexpr (std::is_same_v<T, RangeRef>) {
          return make(RangeRef{normalize_ref(node.first, origin),
                               normalize_ref(node.second, origin)});
        } else if constexpr (std::is_same_v<T, FunctionCall>) {
          FunctionCall call{node.name, {}};
          call.args.reserve(node.args.size());
          for (const auto& arg : node.args) call.args.push_back(normalize_expr(arg, origin));
          return make(std::move(call));
        } else if constexpr (std::is_same_v<T, Binary>) {
          return make(Binary{node.op, normalize_expr(node.lhs, origin),
                             normalize_expr(node.rhs, origin)});
        } else if constexpr (std::is_same_v<T, Unary>) {
          return make(Unary{node.op, normalize_expr(node.operand, origin)});
        } else if constexpr (std::is_same_v<T, Paren>) {
          return make(Paren{normalize_expr(node.inner, origin)});
        } else {
          return expr;  // literals
        }
      },
      expr->node);
}

/// Shape comparison with literals and references erased and parentheses
/// transparent.
const Expr& strip_paren(const Expr& e) {
  if (const auto* paren = std::get_if<Paren>(&e.node)) return strip_paren(*paren->inner);
  return e;
}

bool skeleton_equal(const Expr& raw_a, const Expr& raw_b) {
  const Expr& a = strip_paren(raw_a);
  const Expr& b = strip_paren(raw_b);
  const bool a_wild = std::holds_alternative<NumberLit>(a.node) ||
                      std::holds_alternative<TextLit>(a.node) ||
                      std::holds_alternative<CellRef>(a.node) ||
                      std::holds_alternative<RangeRef>(a.node);
  const bool b_wild = std::holds_alternative<NumberLit>(b.node) ||
                      std::holds_alternative<TextLit>(b.node) ||
                      std::holds_alternative<CellRef>(b.node) ||
                      std::holds_alternative<RangeRef>(b.node);
  if (a_wild || b_wild) return a_wild && b_wild;
  if (a.node.index() != b.node.index()) return false;
  if (const auto* call = std::get_if<FunctionCall>(&a.node)) {
    const auto& other = std::get<FunctionCall>(b.node);
    if (call->name != other.name || call->args.size() != other.args.size()) return false;
    for (std::size_t i = 0; i < call->args.size(); ++i) {
      if (!skeleton_equal(*call->args[i], *other.args[i])) return false;
    }
    return true;
  }
  if (const auto* bin = std::get_if<Binary>(&a.node)) {
    const auto& other = std::get<Binary>(b.node);
    return bin->op == other.op && skeleton_equal(*bin->lhs, *other.lhs) &&
           skeleton_equal(*bin->rhs, *other.rhs);
  }
  const auto& un = std::get<Unary>(a.node);
  const auto& other = std::get<Unary>(b.node);
  return un.op == other.op && skeleton_equal(*un.operand, *other.operand);
}

}  // namespace

std::string render(const Expr& expr) {
  std::string out;
  render_to(expr, out);
  return out;
}

std::string render(const ExprPtr& expr) { return render(*expr); }

NormalizedFormula normalize_relative(const ExprPtr& ast, Address origin) {
  return NormalizedFormula{normalize_expr(ast, origin)};
}

bool copy_equivalent(const ExprPtr& f1, Address origin1, const ExprPtr& f2,
                     Address origin2) {
  return normalize_relative(f1, origin1) == normalize_relative(f2, origin2);
}

bool structurally_equivalent(const ExprPtr& f1, const ExprPtr& f2) {
  return skeleton_equal(*f1, *f2);
}

}  // namespace layout::formula
