#include "layout/address.hpp"

namespace layout {

std::string column_letters(int column) {
  std::string out;
  while (column > 0) {
    int rem = (column - 1) % 26;
    out.insert(out.begin(), static_cast<char>('A' + rem));
    column = (column - 1) / 26;
  }
  return out;
}

std::optional<int> column_index(std::string_view letters) {
  if (letters.empty() || letters.size() > 6) return std::nullopt;
  long long value = 0;
  for (char c : letters) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    if (c < 'A' || c > 'Z') return std::nullopt;
    value = value * 26 + (c - 'A' + 1);
  }
  if (value > 1'000'000'000) return std::nullopt;
  return static_cast<int>(value);
}

std::string to_a1(Address addr) {
  return column_letters(addr.column) + std::to_string(addr.row);
}

std::optional<Address> parse_a1(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && ((text[i] >= 'A' && text[i] <= 'Z') || (text[i] >= 'a' && text[i] <= 'z'))) {
    ++i;
  }
  if (i == 0 || i == text.size()) return std::nullopt;
  auto col = column_index(text.substr(0, i));
  if (!col) return std::nullopt;
  long long row = 0;
  std::size_t digits = 0;
  for (; i < text.size(); ++i, ++digits) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
    row = row * 10 + (text[i] - '0');
    if (row > 100'000'000) return std::nullopt;
  }
  if (digits == 0 || row < 1) return std::nullopt;
  return Address{*col, static_cast<int>(row)};
}

}  // namespace layout
