#include "layout/sheet_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <optional>
#include <string>

#include <json.hpp>

#include "layout/errors.hpp"

namespace layout {

namespace {

char decimal_mark(NumberLocale locale) {
  return locale == NumberLocale::PointDecimal ? '.' : ',';
}

char group_mark(NumberLocale locale) {
  return locale == NumberLocale::PointDecimal ? ',' : '.';
}

/// Validates and strips sign, 3-digit grouping, decimal part and a trailing
/// percent sign; returns the canonical "-123.45" form, or nullopt if `raw`
/// is not a number under the locale.
std::optional<std::string> canonical_number(std::string_view raw, NumberLocale locale) {
  if (raw.empty()) return std::nullopt;
  const char dec = decimal_mark(locale);
  const char grp = group_mark(locale);

  std::string_view rest = raw;
  bool percent = false;
  if (rest.ends_with('%')) {
    percent = true;
    rest.remove_suffix(1);
    if (rest.empty()) return std::nullopt;
  }

  std::string out;
  std::size_t i = 0;
  if (rest[i] == '+' || rest[i] == '-') {
    if (rest[i] == '-') out.push_back('-');
    ++i;
  }

  // Integer part: digit groups; with a group separator every group after
  // the first must have exactly 3 digits.
  std::string int_digits;
  std::size_t group_len = 0;
  bool grouped = false;
  bool any_int = false;
  for (; i < rest.size(); ++i) {
    char c = rest[i];
    if (c >= '0' && c <= '9') {
      int_digits.push_back(c);
      ++group_len;
      any_int = true;
      if (grouped && group_len > 3) return std::nullopt;
    } else if (c == grp) {
      if (group_len == 0 || group_len > 3) return std::nullopt;
      if (grouped && group_len != 3) return std::nullopt;
      grouped = true;
      group_len = 0;
    } else {
      break;
    }
  }
  if (grouped && group_len != 3) return std::nullopt;

  std::string frac_digits;
  if (i < rest.size() && rest[i] == dec) {
    ++i;
    while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') {
      frac_digits.push_back(rest[i]);
      ++i;
    }
    if (frac_digits.empty()) return std::nullopt;
  }
  if (i != rest.size()) return std::nullopt;
  if (!any_int && frac_digits.empty()) return std::nullopt;

  out += int_digits.empty() ? "0" : int_digits;
  if (!frac_digits.empty()) {
    out.push_back('.');
    out += frac_digits;
  }
  if (percent) out += "e-2";
  return out;
}

}  // namespace

CellValue parse_cell_value(std::string_view raw, NumberLocale locale) {
  if (raw.empty()) return CellValue::undefined();
  if (auto canonical = canonical_number(raw, locale)) {
    double value = 0;
    auto [ptr, ec] =
        std::from_chars(canonical->data(), canonical->data() + canonical->size(), value);
    if (ec == std::errc() && ptr == canonical->data() + canonical->size()) {
      return CellValue::number(value);
    }
  }
  return CellValue::text(std::string(raw));
}

std::string render_number(double value, NumberLocale locale) {
  std::array<char, 512> buf;
  auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
  std::string out(buf.data(), ptr);
  if (ec != std::errc()) out = "0";
  if (locale == NumberLocale::CommaDecimal) {
    std::replace(out.begin(), out.end(), '.', ',');
  }
  return out;
}

std::string render_value(const CellValue& value, NumberLocale locale) {
  switch (value.kind()) {
    case CellValue::Kind::Undefined:
      return "";
    case CellValue::Kind::Number:
      return render_number(value.number_value(), locale);
    case CellValue::Kind::Text:
      return value.text_value();
  }
  return "";
}

namespace {

using nlohmann::json;

std::uint32_t parse_color(const std::string& text, Address addr) {
  if (text.size() != 7 || text[0] != '#') {
    throw DocumentError("cell " + to_a1(addr) + ": color must be \"#RRGGBB\", got \"" +
                        text + "\"");
  }
  std::uint32_t value = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    char c = text[i];
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    else
      throw DocumentError("cell " + to_a1(addr) + ": bad hex digit in color \"" + text +
                          "\"");
    value = value * 16 + static_cast<std::uint32_t>(digit);
  }
  return value;
}

std::string render_color(std::uint32_t color) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%06x", color & 0xffffffu);
  return buf;
}

Formatting parse_format(const json& node, Address addr) {
  if (!node.is_object()) {
    throw DocumentError("cell " + to_a1(addr) + ": \"format\" must be an object");
  }
  Formatting fmt;
  if (node.contains("font")) fmt.font = node.at("font").get<std::string>();
  if (node.contains("size")) fmt.size = node.at("size").get<double>();
  if (node.contains("style")) {
    for (const auto& entry : node.at("style")) {
      const std::string style = entry.get<std::string>();
      if (style == "bold") fmt.style.bold = true;
      else if (style == "italic") fmt.style.italic = true;
      else if (style == "underline") fmt.style.underline = true;
      else
        throw DocumentError("cell " + to_a1(addr) + ": unknown font style \"" + style +
                            "\"");
    }
  }
  if (node.contains("color")) fmt.color = parse_color(node.at("color").get<std::string>(), addr);
  return fmt;
}

}  // namespace

Sheet load_sheet_json(std::string_view document, NumberLocale locale) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("malformed sheet document: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("name") || !doc.contains("cells")) {
      throw DocumentError("sheet document needs top-level \"name\" and \"cells\"");
    }
    SheetBuilder builder;
    builder.set_name(doc.at("name").get<std::string>());
    std::size_t index = 0;
    for (const auto& record : doc.at("cells")) {
      const std::string position = "cells[" + std::to_string(index++) + "]";
      if (!record.is_object() || !record.contains("addr") || !record.contains("value")) {
        throw DocumentError(position + ": cell record needs \"addr\" and \"value\"");
      }
      const std::string addr_text = record.at("addr").get<std::string>();
      auto addr = parse_a1(addr_text);
      if (!addr) {
        throw DocumentError(position + ": bad address \"" + addr_text + "\"");
      }
      Cell cell;
      cell.address = *addr;
      cell.value = parse_cell_value(record.at("value").get<std::string>(), locale);
      if (record.contains("formula") && !record.at("formula").is_null()) {
        cell.formula = record.at("formula").get<std::string>();
      }
      bool has_format = record.contains("format") && !record.at("format").is_null();
      if (has_format) cell.formatting = parse_format(record.at("format"), cell.address);
      if (record.contains("frame") && !record.at("frame").is_null()) {
        cell.frame = record.at("frame").get<std::string>();
      }
      // A record with no value, formula, formatting or frame describes an
      // empty cell; it is not stored.
      if (cell.value.is_undefined() && !cell.has_formula() && !has_format && !cell.frame) {
        continue;
      }
      builder.add_cell(std::move(cell));
    }
    return std::move(builder).build();
  } catch (const json::exception& e) {
    throw DocumentError(std::string("malformed sheet document: ") + e.what());
  }
}

namespace {

std::vector<std::vector<std::string>> parse_csv(std::string_view text, char delimiter) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty() && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == delimiter) {
      end_field();
      field_started = false;
    } else if (c == '\r') {
      // swallowed; row ends at the following '\n'
    } else if (c == '\n') {
      end_row();
      ++line;
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted) {
    throw DocumentError("unterminated quote in CSV record ending on line " +
                        std::to_string(line));
  }
  if (field_started || !row.empty() || !field.empty()) end_row();
  return rows;
}

char detect_delimiter(std::string_view text) {
  bool quoted = false;
  for (char c : text) {
    if (c == '"') quoted = !quoted;
    if (quoted) continue;
    if (c == ';') return ';';
    if (c == '\n') break;
  }
  return ',';
}

}  // namespace

Sheet load_sheet_csv(std::string_view document, NumberLocale locale, std::string_view name) {
  SheetBuilder builder;
  builder.set_name(std::string(name));
  const auto rows = parse_csv(document, detect_delimiter(document));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c].empty()) continue;
      Cell cell;
      cell.address = Address{static_cast<int>(c) + 1, static_cast<int>(r) + 1};
      cell.value = parse_cell_value(rows[r][c], locale);
      builder.add_cell(std::move(cell));
    }
  }
  return std::move(builder).build();
}

Sheet load_sheet(std::string_view document, DocumentFormat format, NumberLocale locale,
                 std::string_view default_name) {
  return format == DocumentFormat::Json ? load_sheet_json(document, locale)
                                        : load_sheet_csv(document, locale, default_name);
}

std::string serialize_sheet(const Sheet& sheet, NumberLocale locale) {
  nlohmann::ordered_json doc;
  doc["name"] = sheet.name();
  doc["cells"] = nlohmann::ordered_json::array();
  for (const auto& [addr, cell] : sheet.cells()) {
    nlohmann::ordered_json record;
    record["addr"] = to_a1(addr);
    record["value"] = render_value(cell.value, locale);
    record["formula"] = cell.has_formula() ? nlohmann::ordered_json(cell.formula)
                                           : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json fmt;
    fmt["font"] = cell.formatting.font;
    fmt["size"] = cell.formatting.size;
    auto styles = nlohmann::ordered_json::array();
    if (cell.formatting.style.bold) styles.push_back("bold");
    if (cell.formatting.style.italic) styles.push_back("italic");
    if (cell.formatting.style.underline) styles.push_back("underline");
    fmt["style"] = styles;
    fmt["color"] = render_color(cell.formatting.color);
    record["format"] = fmt;
    record["frame"] = cell.frame ? nlohmann::ordered_json(*cell.frame)
                                 : nlohmann::ordered_json(nullptr);
    doc["cells"].push_back(std::move(record));
  }
  return doc.dump(2) + "\n";
}

}  // namespace layout
