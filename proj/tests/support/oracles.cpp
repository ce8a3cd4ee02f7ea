#include "oracles.hpp"

#include <algorithm>
#include <functional>

namespace testsupport::oracle {

using layout::Cell;
using layout::CellValue;

namespace {

/// True if any non-empty cell sits strictly between a and b (which share a
/// row or column). Deliberately quadratic: scans every cell.
bool any_cell_between(const Sheet& sheet, Address a, Address b) {
  for (const auto& [addr, cell] : sheet.cells()) {
    (void)cell;
    if (a.row == b.row && addr.row == a.row) {
      if (addr.column > std::min(a.column, b.column) &&
          addr.column < std::max(a.column, b.column)) {
        return true;
      }
    }
    if (a.column == b.column && addr.column == a.column) {
      if (addr.row > std::min(a.row, b.row) && addr.row < std::max(a.row, b.row)) {
        return true;
      }
    }
  }
  return false;
}

bool ordered_line_pair(Address first, Address second) {
  if (first.column == second.column) return first.row < second.row;
  if (first.row == second.row) return first.column < second.column;
  return false;
}

template <typename ValueOf>
std::set<AddressPair> pairs_by_value(const Sheet& sheet, long step,
                                     const AddressSet& claimed, ValueOf&& value_of) {
  std::set<AddressPair> out;
  for (const auto& [a, cell_a] : sheet.cells()) {
    (void)cell_a;
    if (claimed.count(a) > 0) continue;
    auto va = value_of(a);
    if (!va) continue;
    for (const auto& [b, cell_b] : sheet.cells()) {
      (void)cell_b;
      if (a == b || claimed.count(b) > 0) continue;
      if (!ordered_line_pair(a, b)) continue;
      auto vb = value_of(b);
      if (!vb) continue;
      if (*vb != *va + static_cast<long double>(step)) continue;
      if (any_cell_between(sheet, a, b)) continue;
      out.insert({a, b});
    }
  }
  return out;
}

std::optional<std::pair<std::string, long>> counter_split(const std::string& text,
                                                          bool leading) {
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  if (leading) {
    std::size_t i = 0;
    while (i < text.size() && is_digit(text[i])) ++i;
    if (i == 0 || i >= text.size() || i > 17) return std::nullopt;
    long number = std::stol(text.substr(0, i));
    std::size_t stem_start = i;
    if (text[stem_start] == ' ') ++stem_start;
    if (stem_start >= text.size() || text[stem_start] == ' ') return std::nullopt;
    return std::pair{"<" + text.substr(stem_start), number};
  }
  std::size_t end = text.size();
  while (end > 0 && is_digit(text[end - 1])) --end;
  if (end == text.size() || text.size() - end > 17) return std::nullopt;
  long number = std::stol(text.substr(end));
  std::size_t stem_end = end;
  if (stem_end > 0 && text[stem_end - 1] == ' ') --stem_end;
  if (stem_end == 0 || text[stem_end - 1] == ' ') return std::nullopt;
  return std::pair{">" + text.substr(0, stem_end), number};
}

}  // namespace

std::set<AddressPair> running_pairs(const Sheet& sheet, long step,
                                    const AddressSet& claimed) {
  return pairs_by_value(sheet, step, claimed, [&](Address a) -> std::optional<long double> {
    const Cell* cell = sheet.find(a);
    if (!cell->value.is_number()) return std::nullopt;
    return static_cast<long double>(cell->value.number_value());
  });
}

std::set<AddressPair> ordinal_pairs(const Sheet& sheet,
                                    const layout::OrdinalDictionary& dict, long step,
                                    const AddressSet& claimed) {
  return pairs_by_value(sheet, step, claimed, [&](Address a) -> std::optional<long double> {
    const Cell* cell = sheet.find(a);
    if (!cell->is_text_label()) return std::nullopt;
    auto it = dict.entries.find(cell->value.text_value());
    if (it == dict.entries.end()) return std::nullopt;
    return static_cast<long double>(it->second);
  });
}

std::set<AddressPair> counter_pairs(const Sheet& sheet, long step,
                                    const AddressSet& claimed) {
  std::set<AddressPair> out;
  for (bool leading : {false, true}) {
    auto pairs = pairs_by_value(
        sheet, step, claimed, [&](Address a) -> std::optional<long double> {
          const Cell* cell = sheet.find(a);
          if (!cell->is_text_label()) return std::nullopt;
          auto split = counter_split(cell->value.text_value(), leading);
          if (!split) return std::nullopt;
          return static_cast<long double>(split->second);
        });
    // The value comparison above ignores the stem; enforce identical stems.
    for (const auto& [a, b] : pairs) {
      auto sa = counter_split(sheet.find(a)->value.text_value(), leading);
      auto sb = counter_split(sheet.find(b)->value.text_value(), leading);
      if (sa && sb && sa->first == sb->first) out.insert({a, b});
    }
  }
  return out;
}

std::vector<std::vector<Address>> chains_from_pairs(const std::set<AddressPair>& pairs) {
  auto assemble = [](const std::map<Address, Address>& successor) {
    std::set<Address> has_predecessor;
    for (const auto& [from, to] : successor) {
      (void)from;
      has_predecessor.insert(to);
    }
    std::vector<std::vector<Address>> chains;
    for (const auto& [start, next] : successor) {
      (void)next;
      if (has_predecessor.count(start) > 0) continue;
      std::vector<Address> chain{start};
      Address cur = start;
      while (true) {
        auto it = successor.find(cur);
        if (it == successor.end()) break;
        cur = it->second;
        chain.push_back(cur);
      }
      chains.push_back(std::move(chain));
    }
    return chains;
  };

  std::map<Address, Address> vertical;
  for (const auto& [a, b] : pairs) {
    if (a.column == b.column) vertical.emplace(a, b);
  }
  auto chains = assemble(vertical);
  AddressSet taken;
  for (const auto& chain : chains) {
    for (Address a : chain) taken.insert(a);
  }

  std::map<Address, Address> horizontal;
  for (const auto& [a, b] : pairs) {
    if (a.row == b.row && taken.count(a) == 0 && taken.count(b) == 0) {
      horizontal.emplace(a, b);
    }
  }
  auto horizontal_chains = assemble(horizontal);
  chains.insert(chains.end(), horizontal_chains.begin(), horizontal_chains.end());
  std::sort(chains.begin(), chains.end());
  return chains;
}

std::vector<std::vector<Address>> complete_groups(const Sheet& sheet,
                                                  const AddressSet& claimed) {
  std::map<std::string, std::vector<Address>> by_value;
  for (const auto& [addr, cell] : sheet.cells()) {
    if (!cell.is_text_label() || claimed.count(addr) > 0) continue;
    by_value[cell.value.text_value()].push_back(addr);
  }
  std::vector<std::vector<Address>> out;
  for (auto& [value, members] : by_value) {
    (void)value;
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool partial_identity_pair(const std::string& a, const std::string& b) {
  auto words = [](const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
      if (c == ' ' || c == '\t') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  };
  const auto wa = words(a);
  const auto wb = words(b);
  if (wa.size() < 2 || wb.size() < 2) return false;
  const std::size_t max_m = std::min(wa.size(), wb.size()) - 1;
  for (std::size_t m = 1; m <= max_m; ++m) {
    bool prefix = true;
    bool suffix = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (wa[i] != wb[i]) prefix = false;
      if (wa[wa.size() - 1 - i] != wb[wb.size() - 1 - i]) suffix = false;
    }
    if (prefix || suffix) return true;
  }
  return false;
}

int empty_between(const Sheet& sheet, Address a, Address b) {
  int span;
  int count = 0;
  if (a.row == b.row) {
    span = std::abs(a.column - b.column) - 1;
    for (int col = std::min(a.column, b.column) + 1; col < std::max(a.column, b.column);
         ++col) {
      if (sheet.find(Address{col, a.row}) != nullptr) ++count;
    }
  } else {
    span = std::abs(a.row - b.row) - 1;
    for (int row = std::min(a.row, b.row) + 1; row < std::max(a.row, b.row); ++row) {
      if (sheet.find(Address{a.column, row}) != nullptr) ++count;
    }
  }
  return span - count;
}

bool dense(const Sheet& sheet, const std::vector<Address>& set, Address a, Address b,
           int max_gap) {
  // Connectivity in the graph whose edges are direct gaps within max_gap,
  // which is what the recursive witness definition unrolls to.
  std::vector<Address> nodes = set;
  auto direct = [&](Address x, Address y) { return empty_between(sheet, x, y) <= max_gap; };
  if (a == b) return true;
  std::vector<Address> frontier{a};
  AddressSet seen{a};
  while (!frontier.empty()) {
    Address cur = frontier.back();
    frontier.pop_back();
    if (direct(cur, b)) return true;
    for (Address next : nodes) {
      if (seen.count(next) > 0) continue;
      if (direct(cur, next)) {
        seen.insert(next);
        frontier.push_back(next);
      }
    }
  }
  return false;
}

std::vector<Address> geometric_assignable(const Sheet& sheet, const AddressSet& labels,
                                          Address label, int max_gap,
                                          const AddressSet& owned, bool down, bool right) {
  std::vector<Address> out;
  if (!sheet.bounds()) return out;
  const layout::Bounds& bounds = *sheet.bounds();

  auto walk = [&](int dc, int dr) {
    int col = label.column + dc;
    int row = label.row + dr;
    int empties = 0;
    bool have_member = false;
    while (col <= bounds.max.column && row <= bounds.max.row) {
      Address pos{col, row};
      const Cell* cell = sheet.find(pos);
      if (cell == nullptr) {
        ++empties;
      } else if (labels.count(pos) > 0) {
        break;
      } else if (owned.count(pos) > 0) {
        break;
      } else if (cell->value.is_text()) {
        // non-label text cell: passes through, not an empty position
      } else {
        if (have_member && empties > max_gap) break;
        out.push_back(pos);
        have_member = true;
        empties = 0;
      }
      col += dc;
      row += dr;
    }
  };
  if (down) walk(0, 1);
  if (right) walk(1, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testsupport::oracle
