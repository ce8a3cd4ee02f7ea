#pragma once

#include <string>
#include <string_view>

#include "layout/sheet.hpp"

namespace layout {

/// Numeric display locale. PointDecimal reads "1,234.5", CommaDecimal reads
/// "1.234,5" (European thousand separators, as in "200.000" = 200000).
enum class NumberLocale { PointDecimal, CommaDecimal };

enum class DocumentFormat { Json, Csv };

/// Classifies raw cell text. Numeric-looking strings under the locale
/// (optional sign, optional 3-digit grouping, optional decimal part,
/// optional trailing "%" which divides by 100) become Number; the empty
/// string becomes Undefined; everything else becomes Text.
CellValue parse_cell_value(std::string_view raw, NumberLocale locale);

/// Shortest fixed-notation decimal that round-trips through
/// parse_cell_value under the same locale.
std::string render_number(double value, NumberLocale locale);

/// Number -> render_number, Text -> verbatim, Undefined -> "".
std::string render_value(const CellValue& value, NumberLocale locale);

/// Loads a sheet document. JSON documents carry formatting and formulas;
/// CSV documents are value-only (RFC 4180, ";" or "," auto-detected,
/// row/column position = address). Throws DocumentError on malformed input
/// or duplicate addresses.
Sheet load_sheet(std::string_view document, DocumentFormat format, NumberLocale locale,
                 std::string_view default_name = "sheet");

Sheet load_sheet_json(std::string_view document, NumberLocale locale);
Sheet load_sheet_csv(std::string_view document, NumberLocale locale,
                     std::string_view name = "sheet");

/// Emits the canonical JSON sheet document. Reloading the result yields a
/// sheet whose cells compare equal field by field.
std::string serialize_sheet(const Sheet& sheet, NumberLocale locale);

}  // namespace layout
