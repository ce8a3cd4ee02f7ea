#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "layout/address.hpp"

namespace layout {

struct FontStyleSet {
  bool bold = false;
  bool italic = false;
  bool underline = false;

  friend constexpr bool operator==(const FontStyleSet&, const FontStyleSet&) = default;
};

/// The formatting tuple used for semantic assignment: font, size, style and
/// font color. Background color is deliberately not part of the model.
struct Formatting {
  std::string font = "default";
  double size = 10.0;
  FontStyleSet style{};
  std::uint32_t color = 0x000000;  // 24-bit RGB

  friend bool operator==(const Formatting&, const Formatting&) = default;
};

/// Shared formatting for cells ingested from value-only sources (CSV).
const Formatting& default_formatting();

/// A cell value is a finite number, a text string, or Undefined (a cell that
/// is present, e.g. because it carries formatting, but has no value).
class CellValue {
 public:
  enum class Kind { Undefined, Number, Text };

  CellValue() = default;
  static CellValue undefined() { return CellValue(); }
  static CellValue number(double v) {
    CellValue r;
    r.data_ = v;
    return r;
  }
  static CellValue text(std::string v) {
    CellValue r;
    r.data_ = std::move(v);
    return r;
  }

  Kind kind() const { return static_cast<Kind>(data_.index()); }
  bool is_undefined() const { return kind() == Kind::Undefined; }
  bool is_number() const { return kind() == Kind::Number; }
  bool is_text() const { return kind() == Kind::Text; }
  double number_value() const { return std::get<double>(data_); }
  const std::string& text_value() const { return std::get<std::string>(data_); }

  friend bool operator==(const CellValue&, const CellValue&) = default;

 private:
  std::variant<std::monostate, double, std::string> data_;
};

struct Cell {
  Address address{};
  CellValue value{};
  std::string formula;  // raw text, empty = no formula
  Formatting formatting{};
  std::optional<std::string> frame;  // opaque frame info, never interpreted

  bool has_formula() const { return !formula.empty(); }
  /// A label in the base sense: holds a string and has no formula.
  bool is_text_label() const { return value.is_text() && !has_formula(); }

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Bounds {
  Address min{};
  Address max{};

  bool contains(Address a) const {
    return a.column >= min.column && a.column <= max.column && a.row >= min.row &&
           a.row <= max.row;
  }
};

/// Immutable sparse grid. Built once by SheetBuilder; analysis passes only
/// read it, so concurrent reads are safe.
class Sheet {
 public:
  const std::string& name() const { return name_; }
  const std::map<Address, Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  const Cell* find(Address a) const {
    auto it = cells_.find(a);
    return it == cells_.end() ? nullptr : &it->second;
  }

  /// Addresses of the non-empty cells in one row, sorted by column.
  std::span<const Address> row_cells(int row) const;
  /// Addresses of the non-empty cells in one column, sorted by row.
  std::span<const Address> column_cells(int column) const;

  /// Empty sheet has no bounding box.
  const std::optional<Bounds>& bounds() const { return bounds_; }

 private:
  friend class SheetBuilder;

  std::string name_ = "sheet";
  std::map<Address, Cell> cells_;
  std::map<int, std::vector<Address>> rows_;
  std::map<int, std::vector<Address>> columns_;
  std::optional<Bounds> bounds_;
};

class SheetBuilder {
 public:
  SheetBuilder& set_name(std::string name);
  /// Throws DocumentError on duplicate addresses or invalid cell state
  /// (address parts < 1, non-positive font size, formula without a cached
  /// Number/Text value).
  SheetBuilder& add_cell(Cell cell);
  Sheet build() &&;

 private:
  Sheet sheet_;
};

/// The non-empty cells strictly between `a` and `b` along their shared row
/// or column, in axis order. Throws std::invalid_argument if the addresses
/// are not collinear.
std::vector<const Cell*> cells_between(const Sheet& sheet, Address a, Address b);

}  // namespace layout
