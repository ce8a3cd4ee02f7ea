#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace testsupport {

using namespace layout;
namespace f = layout::formula;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string fixture_path(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

Sheet load_fixture(const std::string& name) {
  return load_sheet_json(read_file(fixture_path(name)), NumberLocale::CommaDecimal);
}

Sheet random_sheet(Rng& rng, const GridOptions& options) {
  static const char* vocab[] = {"Total",      "Year",        "Item 1",     "Item 2",
                                "Item 3",     "January",     "February",   "March",
                                "Net total",  "Gross total", "Cash flow A", "Cash flow B",
                                "Sum",        "Note"};
  static const char* formulas[] = {"=A1+1", "=SUM(B2:B4)", "=C3*2", "=A1+B2", "=1"};

  std::uniform_int_distribution<int> col_count(1, options.max_columns);
  std::uniform_int_distribution<int> row_count(1, options.max_rows);
  std::uniform_int_distribution<int> roll(0, 99);
  std::uniform_int_distribution<int> small(1, 6);
  std::uniform_int_distribution<std::size_t> vocab_pick(0, std::size(vocab) - 1);
  std::uniform_int_distribution<std::size_t> formula_pick(0, std::size(formulas) - 1);
  std::uniform_int_distribution<int> format_pick(0, 2);

  Formatting bold;
  bold.font = "Arial";
  bold.style.bold = true;
  Formatting red;
  red.font = "Arial";
  red.size = 12;
  red.color = 0xcc0000;
  const Formatting palette[3] = {default_formatting(), bold, red};

  SheetBuilder builder;
  builder.set_name("random");
  const int cols = col_count(rng);
  const int rows = row_count(rng);
  for (int r = 1; r <= rows; ++r) {
    for (int c = 1; c <= cols; ++c) {
      const int kind = roll(rng);
      if (kind < 45) continue;  // empty
      Cell cell;
      cell.address = Address{c, r};
      if (roll(rng) < 20) cell.formatting = palette[format_pick(rng)];
      if (kind < 70) {
        cell.value = CellValue::number(small(rng));
      } else if (kind < 85) {
        cell.value = CellValue::text(vocab[vocab_pick(rng)]);
      } else if (kind < 92) {
        cell.value = CellValue::number(small(rng));
        cell.formula = formulas[formula_pick(rng)];
      } else {
        cell.value = CellValue::undefined();
        cell.formatting = palette[format_pick(rng)];
      }
      builder.add_cell(std::move(cell));
    }
  }
  return std::move(builder).build();
}

namespace {

template <typename T>
f::ExprPtr make(T node) {
  return std::make_shared<f::Expr>(f::Expr{std::move(node)});
}

f::ExprPtr wrap_if_compound(f::ExprPtr expr) {
  const bool atomic = std::holds_alternative<f::NumberLit>(expr->node) ||
                      std::holds_alternative<f::TextLit>(expr->node) ||
                      std::holds_alternative<f::CellRef>(expr->node) ||
                      std::holds_alternative<f::RangeRef>(expr->node) ||
                      std::holds_alternative<f::FunctionCall>(expr->node) ||
                      std::holds_alternative<f::Paren>(expr->node);
  if (atomic) return expr;
  return make(f::Paren{expr});
}

f::RefPart random_part(Rng& rng) {
  std::uniform_int_distribution<int> index(20, 40);
  std::uniform_int_distribution<int> mode(0, 3);
  return f::RefPart{mode(rng) == 0 ? f::RefPart::Mode::Absolute : f::RefPart::Mode::Relative,
                    index(rng)};
}

}  // namespace

f::ExprPtr random_formula(Rng& rng, int depth) {
  std::uniform_int_distribution<int> leaf(0, 3);
  std::uniform_int_distribution<int> node(0, 3);
  std::uniform_int_distribution<int> number(0, 99);
  std::uniform_int_distribution<int> op_pick(0, 5);
  std::uniform_int_distribution<std::size_t> fn_pick(0, 2);
  static const char* functions[] = {"SUM", "AVG", "F"};

  if (depth <= 0 || node(rng) == 0) {
    switch (leaf(rng)) {
      case 0:
        return make(f::NumberLit{static_cast<double>(number(rng))});
      case 1:
        return make(f::TextLit{"x"});
      case 2: {
        f::CellRef a{random_part(rng), random_part(rng)};
        f::CellRef b{random_part(rng), random_part(rng)};
        if (b.column.value < a.column.value) std::swap(a.column, b.column);
        if (b.row.value < a.row.value) std::swap(a.row, b.row);
        return make(f::RangeRef{a, b});
      }
      default:
        return make(f::CellRef{random_part(rng), random_part(rng)});
    }
  }
  switch (node(rng)) {
    case 1: {
      f::FunctionCall call{functions[fn_pick(rng)], {}};
      std::uniform_int_distribution<int> argc(0, 3);
      const int n = argc(rng);
      for (int i = 0; i < n; ++i) call.args.push_back(random_formula(rng, depth - 1));
      return make(std::move(call));
    }
    case 2: {
      static const f::UnaryOp unary_ops[] = {f::UnaryOp::Plus, f::UnaryOp::Minus,
                                             f::UnaryOp::Percent};
      std::uniform_int_distribution<int> u(0, 2);
      return make(f::Unary{unary_ops[u(rng)],
                           wrap_if_compound(random_formula(rng, depth - 1))});
    }
    default: {
      static const f::BinaryOp ops[] = {f::BinaryOp::Add,      f::BinaryOp::Subtract,
                                        f::BinaryOp::Multiply, f::BinaryOp::Divide,
                                        f::BinaryOp::Power,    f::BinaryOp::Concat};
      return make(f::Binary{ops[op_pick(rng)],
                            wrap_if_compound(random_formula(rng, depth - 1)),
                            wrap_if_compound(random_formula(rng, depth - 1))});
    }
  }
}

f::ExprPtr shift_refs(const f::ExprPtr& expr, int dcol, int drow) {
  auto shift_part = [](const f::RefPart& part, int delta) {
    if (part.mode != f::RefPart::Mode::Relative) return part;
    return f::RefPart{part.mode, part.value + delta};
  };
  auto shift_ref = [&](const f::CellRef& ref) {
    return f::CellRef{shift_part(ref.column, dcol), shift_part(ref.row, drow)};
  };
  return std::visit(
      [&](const auto& nodeval) -> f::ExprPtr {
        using T = std::decay_t<decltype(nodeval)>;
        if constexpr (std::is_same_v<T, f::CellRef>) {
          return make(shift_ref(nodeval));
        } else if constexpr (std::is_same_v<T, f::RangeRef>) {
          return make(f::RangeRef{shift_ref(nodeval.first), shift_ref(nodeval.second)});
        } else if constexpr (std::is_same_v<T, f::FunctionCall>) {
          f::FunctionCall call{nodeval.name, {}};
          for (const auto& arg : nodeval.args) call.args.push_back(shift_refs(arg, dcol, drow));
          return make(std::move(call));
        } else if constexpr (std::is_same_v<T, f::Binary>) {
          return make(f::Binary{nodeval.op, shift_refs(nodeval.lhs, dcol, drow),
                                shift_refs(nodeval.rhs, dcol, drow)});
        } else if constexpr (std::is_same_v<T, f::Unary>) {
          return make(f::Unary{nodeval.op, shift_refs(nodeval.operand, dcol, drow)});
        } else if constexpr (std::is_same_v<T, f::Paren>) {
          return make(f::Paren{shift_refs(nodeval.inner, dcol, drow)});
        } else {
          return expr;
        }
      },
      expr->node);
}

}  // namespace testsupport
