#pragma once

#include <string>

#include "layout/abstraction.hpp"
#include "layout/sheet_io.hpp"

namespace layout {

struct ReportOptions {
  NumberLocale locale = NumberLocale::CommaDecimal;
};

/// Plain-text summary of the analysis.
std::string render_text(const Sheet& sheet, const SheetAnalysis& analysis,
                        const ReportOptions& options = {});

/// Machine-readable report:
/// {"areas": [{label, cells, orientation, heuristic, kind}],
///  "semantic_classes": [...], "logical_areas": [...], "findings": [...]}
/// Addresses in A1 notation; key and array order deterministic, so output
/// is byte-identical across runs on identical input.
std::string render_json(const SheetAnalysis& analysis);

/// Self-contained static HTML grid. Each layout area gets a distinct
/// greyscale cycled by area index, except that identity-label areas share
/// one greyscale per group; labels are bold, unassigned cells outlined.
std::string render_html(const Sheet& sheet, const SheetAnalysis& analysis,
                        const ReportOptions& options = {});

}  // namespace layout
