#include "layout/abstraction.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "layout/errors.hpp"
#include "layout/formula.hpp"

namespace layout {

std::string_view finding_kind_name(FindingKind kind) {
  switch (kind) {
    case FindingKind::IrregularUnit: return "irregular-unit";
    case FindingKind::UnassignedCell: return "unassigned-cell";
    case FindingKind::AmbiguousAssignment: return "ambiguous-assignment";
  }
  return "?";
}

namespace {

/// Parsed-or-opaque formula per cell, parsed at most once. Cells whose
/// formulas fail to parse degrade to byte-string comparison.
class FormulaCache {
 public:
  explicit FormulaCache(const Sheet& sheet) : sheet_(sheet) {}

  struct Entry {
    bool parsed = false;
    formula::NormalizedFormula normalized;
    formula::ExprPtr ast;
  };

  const Entry* entry(Address addr) {
    auto it = cache_.find(addr);
    if (it != cache_.end()) return &it->second;
    const Cell* cell = sheet_.find(addr);
    if (cell == nullptr || !cell->has_formula()) return nullptr;
    Entry e;
    try {
      e.ast = formula::parse_formula(cell->formula);
      e.normalized = formula::normalize_relative(e.ast, addr);
      e.parsed = true;
    } catch (const FormulaError&) {
      e.parsed = false;
    }
    return &cache_.emplace(addr, std::move(e)).first->second;
  }

  /// Copy equivalence with the opaque fallback: unparseable formulas are
  /// equivalent only to byte-identical formula text.
  bool equivalent(Address a, Address b) {
    const Entry* ea = entry(a);
    const Entry* eb = entry(b);
    if (ea == nullptr || eb == nullptr) return false;
    if (ea->parsed && eb->parsed) return ea->normalized == eb->normalized;
    return sheet_.find(a)->formula == sheet_.find(b)->formula;
  }

 private:
  const Sheet& sheet_;
  std::map<Address, Entry> cache_;
};

struct Offset {
  int dcol = 0;
  int drow = 0;
  friend bool operator<(const Offset& a, const Offset& b) {
    return a.drow != b.drow ? a.drow < b.drow : a.dcol < b.dcol;
  }
  friend bool operator==(const Offset&, const Offset&) = default;
};

std::map<Offset, Address> offsets_of(const LayoutArea& area) {
  std::map<Offset, Address> out;
  for (Address cell : area.cells) {
    out.emplace(Offset{cell.column - area.label.column, cell.row - area.label.row}, cell);
  }
  return out;
}

/// Equivalence of two aligned cells: formula cells must be copy-equivalent,
/// value cells must both be numeric; a formula never matches a value.
bool cells_equivalent(const Sheet& sheet, FormulaCache& cache, Address a, Address b) {
  const Cell* ca = sheet.find(a);
  const Cell* cb = sheet.find(b);
  if (ca->has_formula() != cb->has_formula()) return false;
  if (ca->has_formula()) return cache.equivalent(a, b);
  return ca->value.is_number() && cb->value.is_number();
}

struct AlignedPair {
  bool has_overlap = false;
  bool equivalent = false;
  std::vector<Offset> failing;
};

AlignedPair compare_areas(const Sheet& sheet, FormulaCache& cache, const LayoutArea& a,
                          const LayoutArea& b) {
  AlignedPair out;
  auto oa = offsets_of(a);
  auto ob = offsets_of(b);
  out.equivalent = true;
  for (const auto& [offset, cell_a] : oa) {
    auto it = ob.find(offset);
    if (it == ob.end()) continue;
    out.has_overlap = true;
    if (!cells_equivalent(sheet, cache, cell_a, it->second)) {
      out.equivalent = false;
      out.failing.push_back(offset);
    }
  }
  if (!out.has_overlap) out.equivalent = false;
  return out;
}

std::map<int, std::vector<int>> unit_areas(const AnalysisResult& result) {
  std::map<int, std::vector<int>> out;
  for (std::size_t i = 0; i < result.areas.size(); ++i) {
    const LayoutArea& area = result.areas[i];
    if (area.heuristic != 1 && area.heuristic != 2) continue;
    if (auto unit = result.catalog.unit_of(area.label)) {
      out[*unit].push_back(static_cast<int>(i));
    }
  }
  return out;
}

}  // namespace

std::vector<SemanticClass> group_semantic_classes(const Sheet& sheet,
                                                  const AnalysisResult& result) {
  FormulaCache cache(sheet);
  std::vector<SemanticClass> classes;
  for (const auto& [unit, indices] : unit_areas(result)) {
    std::vector<SemanticClass> unit_classes;
    for (int index : indices) {
      const LayoutArea& area = result.areas[index];
      bool placed = false;
      for (auto& cls : unit_classes) {
        bool fits = true;
        for (int member : cls.area_indices) {
          auto cmp = compare_areas(sheet, cache, result.areas[member], area);
          if (!cmp.equivalent) {
            fits = false;
            break;
          }
        }
        if (fits) {
          cls.area_indices.push_back(index);
          placed = true;
          break;
        }
      }
      if (!placed) {
        SemanticClass cls;
        cls.relation = result.catalog.unit_kind(unit);
        cls.unit = unit;
        cls.area_indices.push_back(index);
        unit_classes.push_back(std::move(cls));
      }
    }
    for (auto& cls : unit_classes) {
      if (cls.area_indices.size() < 2) continue;
      // Per-offset verdicts over the offsets where at least two members
      // have a cell.
      std::map<Offset, std::vector<Address>> columns;
      for (int index : cls.area_indices) {
        for (const auto& [offset, cell] : offsets_of(result.areas[index])) {
          columns[offset].push_back(cell);
        }
      }
      for (const auto& [offset, cells] : columns) {
        if (cells.size() < 2) continue;
        const Cell* first = sheet.find(cells.front());
        AlignmentEntry entry;
        entry.dcol = offset.dcol;
        entry.drow = offset.drow;
        entry.verdict = first->has_formula() ? OffsetVerdict::CopyEquivalent
                                             : OffsetVerdict::BothNumeric;
        cls.alignment.push_back(entry);
      }
      classes.push_back(std::move(cls));
    }
  }
  return classes;
}

std::vector<LogicalArea> find_logical_areas(const Sheet& sheet, const LayoutArea& area) {
  if (area.heuristic != 3) {
    throw std::invalid_argument("find_logical_areas expects an area produced by H3");
  }
  FormulaCache cache(sheet);
  std::vector<Address> formula_cells;
  for (Address cell : area.cells) {
    if (sheet.find(cell)->has_formula()) formula_cells.push_back(cell);
  }

  // Maximal copy-equivalence classes, in first-member order.
  std::vector<std::vector<Address>> copy_classes;
  for (Address cell : formula_cells) {
    bool placed = false;
    for (auto& cls : copy_classes) {
      if (cache.equivalent(cls.front(), cell)) {
        cls.push_back(cell);
        placed = true;
        break;
      }
    }
    if (!placed) copy_classes.push_back({cell});
  }

  std::vector<LogicalArea> out;
  std::vector<Address> singletons;
  for (const auto& cls : copy_classes) {
    if (cls.size() >= 2) {
      LogicalArea la;
      la.area_label = area.label;
      la.relation = LogicalRelation::Copy;
      la.cells = cls;
      la.formula = sheet.find(cls.front())->formula;
      out.push_back(std::move(la));
    } else {
      singletons.push_back(cls.front());
    }
  }

  // Merge leftover singletons by structural equivalence.
  std::vector<std::vector<Address>> structural_classes;
  for (Address cell : singletons) {
    const FormulaCache::Entry* entry = cache.entry(cell);
    bool placed = false;
    for (auto& cls : structural_classes) {
      const FormulaCache::Entry* head = cache.entry(cls.front());
      if (entry->parsed && head->parsed &&
          formula::structurally_equivalent(entry->ast, head->ast)) {
        cls.push_back(cell);
        placed = true;
        break;
      }
    }
    if (!placed) structural_classes.push_back({cell});
  }
  for (const auto& cls : structural_classes) {
    LogicalArea la;
    la.area_label = area.label;
    la.relation = LogicalRelation::Structural;
    la.cells = cls;
    la.formula = sheet.find(cls.front())->formula;
    out.push_back(std::move(la));
  }
  return out;
}

std::vector<Finding> detect_irregularities(const Sheet& sheet,
                                           const AnalysisResult& result,
                                           std::span<const SemanticClass> classes) {
  FormulaCache cache(sheet);
  std::vector<Finding> findings;

  for (const auto& [unit, indices] : unit_areas(result)) {
    if (indices.size() < 2) continue;
    std::vector<const SemanticClass*> unit_classes;
    std::set<int> classed;
    for (const auto& cls : classes) {
      if (cls.unit != unit) continue;
      unit_classes.push_back(&cls);
      for (int index : cls.area_indices) classed.insert(index);
    }
    std::vector<int> orphans;
    for (int index : indices) {
      if (classed.count(index) == 0) orphans.push_back(index);
    }
    if (orphans.empty()) continue;

    const SemanticClass* majority = nullptr;
    for (const SemanticClass* cls : unit_classes) {
      if (cls->area_indices.size() * 2 > indices.size() &&
          (majority == nullptr || cls->area_indices.size() > majority->area_indices.size())) {
        majority = cls;
      }
    }

    const std::string unit_desc = result.catalog.unit_description(unit);
    if (majority != nullptr) {
      // Name each orphan's cells at the offsets where it deviates from the
      // majority pattern.
      for (int orphan : orphans) {
        const LayoutArea& area = result.areas[orphan];
        std::set<Offset> failing;
        for (int member : majority->area_indices) {
          auto cmp = compare_areas(sheet, cache, result.areas[member], area);
          for (const Offset& offset : cmp.failing) failing.insert(offset);
        }
        auto offsets = offsets_of(area);
        Finding finding;
        finding.kind = FindingKind::IrregularUnit;
        for (const Offset& offset : failing) {
          auto it = offsets.find(offset);
          if (it != offsets.end()) finding.subject.push_back(it->second);
        }
        if (finding.subject.empty()) {
          // Deviation without a shared offset (e.g. disjoint extents):
          // report the whole area.
          finding.subject = area.cells;
        }
        std::string cells_text;
        for (Address a : finding.subject) {
          if (!cells_text.empty()) cells_text += ", ";
          cells_text += to_a1(a);
        }
        finding.detail = "cells " + cells_text + " in the area of label " +
                         to_a1(area.label) + " deviate from the majority pattern of the " +
                         unit_desc;
        findings.push_back(std::move(finding));
      }
    } else {
      // No strict majority: report the disagreeing sides together.
      Finding finding;
      finding.kind = FindingKind::IrregularUnit;
      std::set<Address> subject;
      for (int orphan : orphans) {
        const LayoutArea& area = result.areas[orphan];
        auto offsets = offsets_of(area);
        for (int other : indices) {
          if (other == orphan) continue;
          auto cmp = compare_areas(sheet, cache, result.areas[other], area);
          for (const Offset& offset : cmp.failing) {
            auto it = offsets.find(offset);
            if (it != offsets.end()) subject.insert(it->second);
          }
        }
      }
      if (subject.empty()) {
        for (int orphan : orphans) {
          for (Address cell : result.areas[orphan].cells) subject.insert(cell);
        }
      }
      finding.subject.assign(subject.begin(), subject.end());
      finding.detail = "the areas of the " + unit_desc +
                       " disagree with each other and no majority pattern exists";
      findings.push_back(std::move(finding));
    }
  }
  return findings;
}

std::vector<Finding> unassigned_cells(const AnalysisResult& result) {
  std::set<Address> ambiguous;
  std::map<Address, const AmbiguousCell*> ambiguous_records;
  for (const auto& record : result.ambiguous) {
    ambiguous.insert(record.cell);
    ambiguous_records[record.cell] = &record;
  }
  std::vector<Finding> findings;
  for (Address addr : result.unassigned) {
    Finding finding;
    finding.subject = {addr};
    if (ambiguous.count(addr) > 0) {
      finding.kind = FindingKind::AmbiguousAssignment;
      std::string labels_text;
      for (Address label : ambiguous_records[addr]->candidates) {
        if (!labels_text.empty()) labels_text += " and ";
        labels_text += to_a1(label);
      }
      finding.detail = "cell " + to_a1(addr) + " is assignable to labels " + labels_text +
                       "; the assignment is ambiguous";
    } else {
      finding.kind = FindingKind::UnassignedCell;
      finding.detail = "cell " + to_a1(addr) + " is not assigned to any label";
    }
    findings.push_back(std::move(finding));
  }
  return findings;
}

SheetAnalysis analyze_sheet(const Sheet& sheet, const PipelineConfig& config) {
  SheetAnalysis analysis;
  analysis.layout = run_pipeline(sheet, config);
  analysis.classes = group_semantic_classes(sheet, analysis.layout);
  for (const LayoutArea& area : analysis.layout.areas) {
    if (area.heuristic != 3) continue;
    auto logical = find_logical_areas(sheet, area);
    analysis.logical_areas.insert(analysis.logical_areas.end(), logical.begin(),
                                  logical.end());
  }
  analysis.findings = detect_irregularities(sheet, analysis.layout, analysis.classes);
  auto unassigned = unassigned_cells(analysis.layout);
  analysis.findings.insert(analysis.findings.end(), unassigned.begin(), unassigned.end());
  return analysis;
}

}  // namespace layout
