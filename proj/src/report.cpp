#include "layout/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace layout {

namespace {

std::string area_range(const LayoutArea& area) {
  Address lo = area.label;
  Address hi = area.label;
  for (Address cell : area.cells) {
    lo.column = std::min(lo.column, cell.column);
    lo.row = std::min(lo.row, cell.row);
    hi.column = std::max(hi.column, cell.column);
    hi.row = std::max(hi.row, cell.row);
  }
  return to_a1(lo) + ":" + to_a1(hi);
}

std::string join_addresses(std::span<const Address> addrs) {
  std::string out;
  for (Address a : addrs) {
    if (!out.empty()) out += " ";
    out += to_a1(a);
  }
  return out;
}

}  // namespace

std::string render_text(const Sheet& sheet, const SheetAnalysis& analysis,
                        const ReportOptions& options) {
  (void)options;
  const AnalysisResult& layout = analysis.layout;
  std::ostringstream out;
  out << "sheet \"" << sheet.name() << "\": " << sheet.size() << " non-empty cells, "
      << layout.catalog.labels().size() << " labels\n";

  out << "layout areas (" << layout.areas.size() << "):\n";
  for (const LayoutArea& area : layout.areas) {
    out << "  [H" << area.heuristic << "] " << area_range(area) << "  label "
        << to_a1(area.label) << " (" << label_kind_name(area.label_kind) << ", "
        << orientation_name(area.orientation) << "): " << join_addresses(area.cells)
        << "\n";
  }

  out << "semantic classes (" << analysis.classes.size() << "):\n";
  for (const SemanticClass& cls : analysis.classes) {
    out << "  " << layout.catalog.unit_description(cls.unit) << ": areas";
    for (int index : cls.area_indices) {
      out << " " << to_a1(layout.areas[index].label);
    }
    out << "\n";
  }

  out << "logical areas (" << analysis.logical_areas.size() << "):\n";
  for (const LogicalArea& la : analysis.logical_areas) {
    out << "  area " << to_a1(la.area_label) << " ("
        << (la.relation == LogicalRelation::Copy ? "copy" : "structural")
        << "): " << join_addresses(la.cells) << "\n";
  }

  out << "findings (" << analysis.findings.size() << "):\n";
  for (const Finding& finding : analysis.findings) {
    out << "  [" << finding_kind_name(finding.kind) << "] " << finding.detail << "\n";
  }
  return out.str();
}

std::string render_json(const SheetAnalysis& analysis) {
  using ordered_json = nlohmann::ordered_json;
  const AnalysisResult& layout = analysis.layout;

  ordered_json doc;
  doc["areas"] = ordered_json::array();
  for (const LayoutArea& area : layout.areas) {
    ordered_json node;
    node["label"] = to_a1(area.label);
    auto cells = ordered_json::array();
    for (Address cell : area.cells) cells.push_back(to_a1(cell));
    node["cells"] = cells;
    node["orientation"] = std::string(orientation_name(area.orientation));
    node["heuristic"] = area.heuristic;
    node["kind"] = std::string(label_kind_name(area.label_kind));
    doc["areas"].push_back(std::move(node));
  }

  doc["semantic_classes"] = ordered_json::array();
  for (const SemanticClass& cls : analysis.classes) {
    ordered_json node;
    node["relation"] = std::string(label_kind_name(cls.relation));
    node["unit"] = layout.catalog.unit_description(cls.unit);
    auto labels = ordered_json::array();
    for (int index : cls.area_indices) labels.push_back(to_a1(layout.areas[index].label));
    node["labels"] = labels;
    auto alignment = ordered_json::array();
    for (const AlignmentEntry& entry : cls.alignment) {
      ordered_json offset;
      offset["offset"] = ordered_json::array({entry.dcol, entry.drow});
      offset["verdict"] =
          entry.verdict == OffsetVerdict::CopyEquivalent ? "copy" : "numeric";
      alignment.push_back(std::move(offset));
    }
    node["alignment"] = alignment;
    doc["semantic_classes"].push_back(std::move(node));
  }

  doc["logical_areas"] = ordered_json::array();
  for (const LogicalArea& la : analysis.logical_areas) {
    ordered_json node;
    node["area"] = to_a1(la.area_label);
    node["relation"] = la.relation == LogicalRelation::Copy ? "copy" : "structural";
    auto cells = ordered_json::array();
    for (Address cell : la.cells) cells.push_back(to_a1(cell));
    node["cells"] = cells;
    node["formula"] = la.formula;
    doc["logical_areas"].push_back(std::move(node));
  }

  doc["findings"] = ordered_json::array();
  for (const Finding& finding : analysis.findings) {
    ordered_json node;
    node["kind"] = std::string(finding_kind_name(finding.kind));
    auto subject = ordered_json::array();
    for (Address cell : finding.subject) subject.push_back(to_a1(cell));
    node["subject"] = subject;
    node["detail"] = finding.detail;
    doc["findings"].push_back(std::move(node));
  }
  return doc.dump(2) + "\n";
}

namespace {

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

constexpr const char* kGreyscales[] = {"#f2f2f2", "#e0e0e0", "#cecece", "#bcbcbc",
                                       "#aaaaaa", "#989898", "#868686", "#747474"};
constexpr int kGreyscaleCount = 8;

}  // namespace

std::string render_html(const Sheet& sheet, const SheetAnalysis& analysis,
                        const ReportOptions& options) {
  const AnalysisResult& layout = analysis.layout;

  // Shade per area, cycled by area index; areas built on the same identity
  // group share one shade.
  std::map<int, int> shade_of_area;
  std::map<int, int> shade_of_group;
  int next_shade = 0;
  for (std::size_t i = 0; i < layout.areas.size(); ++i) {
    const LayoutArea& area = layout.areas[i];
    if (area.heuristic == 2) {
      auto unit = layout.catalog.unit_of(area.label);
      if (unit && shade_of_group.count(*unit) > 0) {
        shade_of_area[static_cast<int>(i)] = shade_of_group[*unit];
        continue;
      }
      if (unit) shade_of_group[*unit] = next_shade % kGreyscaleCount;
    }
    shade_of_area[static_cast<int>(i)] = next_shade % kGreyscaleCount;
    ++next_shade;
  }

  // First area touching a cell wins the shade; labels are shaded with the
  // first area they own.
  std::map<Address, int> area_of_cell;
  for (std::size_t i = 0; i < layout.areas.size(); ++i) {
    const LayoutArea& area = layout.areas[i];
    for (Address cell : area.cells) {
      area_of_cell.emplace(cell, static_cast<int>(i));
    }
    area_of_cell.emplace(area.label, static_cast<int>(i));
  }
  std::set<Address> unassigned(layout.unassigned.begin(), layout.unassigned.end());

  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>"
      << html_escape(sheet.name()) << "</title>\n<style>\n"
      << "  body { font-family: sans-serif; }\n"
      << "  table { border-collapse: collapse; }\n"
      << "  td, th { border: 1px solid #ddd; padding: 3px 8px; min-width: 2.2em; "
         "text-align: left; }\n"
      << "  th { background: #fafafa; color: #777; font-weight: normal; }\n"
      << "  td.label { font-weight: bold; }\n"
      << "  td.unassigned { outline: 2px dashed #555; outline-offset: -2px; }\n"
      << "</style>\n</head>\n<body>\n<h1>" << html_escape(sheet.name()) << "</h1>\n";

  out << "<table>\n";
  if (sheet.bounds()) {
    const Bounds& bounds = *sheet.bounds();
    out << "  <tr><th></th>";
    for (int col = bounds.min.column; col <= bounds.max.column; ++col) {
      out << "<th>" << column_letters(col) << "</th>";
    }
    out << "</tr>\n";
    for (int row = bounds.min.row; row <= bounds.max.row; ++row) {
      out << "  <tr><th>" << row << "</th>";
      for (int col = bounds.min.column; col <= bounds.max.column; ++col) {
        Address addr{col, row};
        const Cell* cell = sheet.find(addr);
        std::string classes;
        std::string style;
        if (cell != nullptr && layout.catalog.is_label(addr)) classes = "label";
        if (unassigned.count(addr) > 0) classes += classes.empty() ? "unassigned" : " unassigned";
        auto it = area_of_cell.find(addr);
        if (it != area_of_cell.end()) {
          style = std::string("background:") + kGreyscales[shade_of_area[it->second]] + ";";
        }
        out << "<td";
        if (!classes.empty()) out << " class=\"" << classes << "\"";
        if (!style.empty()) out << " style=\"" << style << "\"";
        out << ">";
        if (cell != nullptr) out << html_escape(render_value(cell->value, options.locale));
        out << "</td>";
      }
      out << "</tr>\n";
    }
  }
  out << "</table>\n";

  if (!analysis.findings.empty()) {
    out << "<h2>findings</h2>\n<ul>\n";
    for (const Finding& finding : analysis.findings) {
      out << "  <li>[" << finding_kind_name(finding.kind) << "] "
          << html_escape(finding.detail) << "</li>\n";
    }
    out << "</ul>\n";
  }
  out << "</body>\n</html>\n";
  return out.str();
}

}  // namespace layout
