#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace layout {

/// 1-based cell coordinates. Column 1 is "A", row 1 is "1".
/// Ordering is row-major (reading order): by row, then by column.
struct Address {
  int column = 1;
  int row = 1;

  friend constexpr bool operator==(const Address&, const Address&) = default;
  friend constexpr bool operator<(const Address& a, const Address& b) {
    return a.row != b.row ? a.row < b.row : a.column < b.column;
  }
  friend constexpr bool operator>(const Address& a, const Address& b) { return b < a; }
  friend constexpr bool operator<=(const Address& a, const Address& b) { return !(b < a); }
  friend constexpr bool operator>=(const Address& a, const Address& b) { return !(a < b); }
};

struct AddressHash {
  std::size_t operator()(const Address& a) const {
    return std::hash<long long>()((static_cast<long long>(a.row) << 20) ^ a.column);
  }
};

/// "B18"-style A1 notation.
std::string to_a1(Address addr);

/// Parses strict A1 notation (letters then digits, no "$" markers).
/// Returns nullopt for anything else.
std::optional<Address> parse_a1(std::string_view text);

/// Bijective base-26 column letters: 1 -> "A", 26 -> "Z", 27 -> "AA".
std::string column_letters(int column);

/// Inverse of column_letters; nullopt on empty input, overflow or
/// non-alphabetic characters.
std::optional<int> column_index(std::string_view letters);

}  // namespace layout
