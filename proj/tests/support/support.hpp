#pragma once

#include <random>
#include <string>
#include <vector>

#include "layout/formula.hpp"
#include "layout/sheet.hpp"
#include "layout/sheet_io.hpp"

namespace testsupport {

std::string read_file(const std::string& path);
std::string fixture_path(const std::string& name);
layout::Sheet load_fixture(const std::string& name);

using Rng = std::mt19937_64;

struct GridOptions {
  int max_columns = 10;
  int max_rows = 10;
};

/// Sparse random grid mixing numbers, labels from a small vocabulary,
/// formula cells, undefined cells and a few formats. Deterministic for a
/// given rng state.
layout::Sheet random_sheet(Rng& rng, const GridOptions& options = {});

/// Random formula AST whose rendering re-parses to the identical tree
/// (non-atomic operands are parenthesised).
layout::formula::ExprPtr random_formula(Rng& rng, int depth = 3);

/// Shifts every relative reference part by the given deltas. Test helper
/// for translation-invariance checks.
layout::formula::ExprPtr shift_refs(const layout::formula::ExprPtr& expr, int dcol,
                                    int drow);

}  // namespace testsupport
