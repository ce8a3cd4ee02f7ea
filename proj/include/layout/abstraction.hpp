#pragma once

#include <span>
#include <string>
#include <vector>

#include "layout/assignment.hpp"

namespace layout {

enum class OffsetVerdict { CopyEquivalent, BothNumeric };

/// One aligned offset (delta from the area label) and the equivalence that
/// held there across the class members.
struct AlignmentEntry {
  int dcol = 0;
  int drow = 0;
  OffsetVerdict verdict = OffsetVerdict::BothNumeric;
};

/// An equivalence class of H1/H2 layout areas with related labels and
/// offset-aligned equivalent content.
struct SemanticClass {
  LabelKind relation = LabelKind::Plain;
  int unit = -1;                   // catalog chain/group id
  std::vector<int> area_indices;   // into AnalysisResult::areas
  std::vector<AlignmentEntry> alignment;
};

enum class LogicalRelation { Copy, Structural };

/// A maximal set of formula cells inside one layout area related by copy
/// equivalence (or, for leftover singletons, structural equivalence).
struct LogicalArea {
  Address area_label{};
  LogicalRelation relation = LogicalRelation::Copy;
  std::vector<Address> cells;
  std::string formula;  // raw text of a representative member
};

enum class FindingKind { IrregularUnit, UnassignedCell, AmbiguousAssignment };
std::string_view finding_kind_name(FindingKind kind);

struct Finding {
  FindingKind kind = FindingKind::UnassignedCell;
  std::vector<Address> subject;  // non-empty
  std::string detail;
};

/// Groups H1/H2 areas into semantic classes: two areas join a class iff
/// their labels share a chain or identity group and, aligning cells by
/// offset from the label, every overlapping offset pair is copy-equivalent
/// (formula cells) or both numeric (value cells). Lengths may differ; at
/// least one overlapping offset is required. Classes have two or more
/// members.
std::vector<SemanticClass> group_semantic_classes(const Sheet& sheet,
                                                  const AnalysisResult& result);

/// Partitions the formula cells of an H3 area into copy-equivalence
/// classes; leftover singletons are merged by structural equivalence and
/// reported with relation = Structural. Throws std::invalid_argument for
/// areas not produced by H3.
std::vector<LogicalArea> find_logical_areas(const Sheet& sheet, const LayoutArea& area);

/// Flags class irregularities: an area whose label belongs to a chain/group
/// but which joined no class is compared against the strict-majority class
/// of its unit and the deviating cells are reported; without a majority the
/// disagreeing sides are reported together.
std::vector<Finding> detect_irregularities(const Sheet& sheet,
                                           const AnalysisResult& result,
                                           std::span<const SemanticClass> classes);

/// One finding per unowned non-label cell; cells recorded as ambiguous
/// during conflict resolution are reported as ambiguous-assignment instead.
std::vector<Finding> unassigned_cells(const AnalysisResult& result);

struct SheetAnalysis {
  AnalysisResult layout;
  std::vector<SemanticClass> classes;
  std::vector<LogicalArea> logical_areas;
  std::vector<Finding> findings;
};

/// Full pass: pipeline, semantic classes, logical areas of H3 areas,
/// irregularity and unassigned findings.
SheetAnalysis analyze_sheet(const Sheet& sheet, const PipelineConfig& config = {});

}  // namespace layout
