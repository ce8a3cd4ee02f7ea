#include "layout/sheet.hpp"

#include <algorithm>
#include <stdexcept>

#include "layout/errors.hpp"

namespace layout {

const Formatting& default_formatting() {
  static const Formatting instance{};
  return instance;
}

std::span<const Address> Sheet::row_cells(int row) const {
  auto it = rows_.find(row);
  if (it == rows_.end()) return {};
  return it->second;
}

std::span<const Address> Sheet::column_cells(int column) const {
  auto it = columns_.find(column);
  if (it == columns_.end()) return {};
  return it->second;
}

SheetBuilder& SheetBuilder::set_name(std::string name) {
  sheet_.name_ = std::move(name);
  return *this;
}

SheetBuilder& SheetBuilder::add_cell(Cell cell) {
  if (cell.address.column < 1 || cell.address.row < 1) {
    throw DocumentError("cell address out of range: column " +
                        std::to_string(cell.address.column) + ", row " +
                        std::to_string(cell.address.row));
  }
  if (cell.formatting.size <= 0) {
    throw DocumentError("cell " + to_a1(cell.address) + ": font size must be positive");
  }
  if (cell.has_formula() && cell.value.is_undefined()) {
    throw DocumentError("cell " + to_a1(cell.address) +
                        ": a formula cell needs a cached value");
  }
  auto [it, inserted] = sheet_.cells_.emplace(cell.address, std::move(cell));
  if (!inserted) {
    throw DocumentError("duplicate cell address " + to_a1(it->first));
  }
  return *this;
}

Sheet SheetBuilder::build() && {
  Sheet out = std::move(sheet_);
  for (const auto& [addr, cell] : out.cells_) {
    (void)cell;
    out.rows_[addr.row].push_back(addr);
    out.columns_[addr.column].push_back(addr);
    if (!out.bounds_) {
      out.bounds_ = Bounds{addr, addr};
    } else {
      out.bounds_->min.column = std::min(out.bounds_->min.column, addr.column);
      out.bounds_->min.row = std::min(out.bounds_->min.row, addr.row);
      out.bounds_->max.column = std::max(out.bounds_->max.column, addr.column);
      out.bounds_->max.row = std::max(out.bounds_->max.row, addr.row);
    }
  }
  for (auto& [row, addrs] : out.rows_) {
    (void)row;
    std::sort(addrs.begin(), addrs.end(),
              [](Address a, Address b) { return a.column < b.column; });
  }
  for (auto& [col, addrs] : out.columns_) {
    (void)col;
    std::sort(addrs.begin(), addrs.end(), [](Address a, Address b) { return a.row < b.row; });
  }
  return out;
}

std::vector<const Cell*> cells_between(const Sheet& sheet, Address a, Address b) {
  std::vector<const Cell*> out;
  if (a.row == b.row) {
    int lo = std::min(a.column, b.column);
    int hi = std::max(a.column, b.column);
    for (Address addr : sheet.row_cells(a.row)) {
      if (addr.column > lo && addr.column < hi) out.push_back(sheet.find(addr));
    }
  } else if (a.column == b.column) {
    int lo = std::min(a.row, b.row);
    int hi = std::max(a.row, b.row);
    for (Address addr : sheet.column_cells(a.column)) {
      if (addr.row > lo && addr.row < hi) out.push_back(sheet.find(addr));
    }
  } else {
    throw std::invalid_argument("cells_between: " + to_a1(a) + " and " + to_a1(b) +
                                " share neither a row nor a column");
  }
  return out;
}

}  // namespace layout
