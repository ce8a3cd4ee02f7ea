#include "layout/assignment.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace layout {

std::string_view orientation_name(Orientation o) {
  return o == Orientation::RowOriented ? "row-oriented" : "column-oriented";
}

namespace {

int axis_coord(Address a, Direction dir) {
  return dir == Direction::Down ? a.row : a.column;
}

/// Walks the non-empty cells of the label's column (or row) outwards.
/// Stops at labels and at owned cells; text-valued cells that are not
/// labels pass through without counting as empty positions. On the first
/// candidate whose empty gap from the previous candidate exceeds max_gap
/// the walk ends (the near, dense prefix is kept). The gap between the
/// label and the first candidate is not constrained.
///
/// `resolved`/`self` implement the commit pass of a heuristic wave: cells
/// already resolved to another label block the walk like owned cells do.
std::vector<Address> walk_direction(const Sheet& sheet, const LabelCatalog& catalog,
                                    Address label, Direction dir, int max_gap,
                                    const AssignmentState& state,
                                    const std::map<Address, Address>* resolved,
                                    Address self) {
  std::span<const Address> line =
      dir == Direction::Down ? sheet.column_cells(label.column) : sheet.row_cells(label.row);
  std::vector<Address> members;
  const int label_coord = axis_coord(label, dir);
  int last_member_coord = label_coord;
  int skipped_since_member = 0;

  for (Address addr : line) {
    if (axis_coord(addr, dir) <= label_coord) continue;
    if (catalog.is_label(addr)) break;
    if (state.owned(addr)) break;
    if (resolved != nullptr) {
      auto it = resolved->find(addr);
      if (it != resolved->end() && it->second != self) break;
    }
    const Cell* cell = sheet.find(addr);
    if (cell->value.is_text()) {
      ++skipped_since_member;
      continue;
    }
    if (!members.empty()) {
      const int empties =
          axis_coord(addr, dir) - last_member_coord - 1 - skipped_since_member;
      if (empties > max_gap) break;
    }
    members.push_back(addr);
    last_member_coord = axis_coord(addr, dir);
    skipped_since_member = 0;
  }
  return members;
}

std::vector<Address> assignable(const Sheet& sheet, const LabelCatalog& catalog,
                                Address label, int max_gap, const AssignmentState& state,
                                DirectionMask directions, bool semantic,
                                const std::map<Address, Address>* resolved, Address self) {
  if (max_gap < 0) throw std::invalid_argument("max_gap must be non-negative");
  std::vector<Address> out;
  const Cell* label_cell = sheet.find(label);
  for (Direction dir : {Direction::Down, Direction::Right}) {
    if (dir == Direction::Down && !directions.down) continue;
    if (dir == Direction::Right && !directions.right) continue;
    auto members =
        walk_direction(sheet, catalog, label, dir, max_gap, state, resolved, self);
    if (semantic && label_cell != nullptr) {
      // Definition-7 filter: the cell carries the label's formatting or is
      // Undefined, and nothing between label and cell is formatted
      // differently from the cell.
      std::vector<Address> kept;
      for (Address addr : members) {
        const Cell* cell = sheet.find(addr);
        if (!(cell->formatting == label_cell->formatting) && !cell->value.is_undefined()) {
          continue;
        }
        bool clean = true;
        for (const Cell* between : cells_between(sheet, label, addr)) {
          if (!(between->formatting == cell->formatting)) {
            clean = false;
            break;
          }
        }
        if (clean) kept.push_back(addr);
      }
      members = std::move(kept);
    }
    out.insert(out.end(), members.begin(), members.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Address> geometric_assignable(const Sheet& sheet, const LabelCatalog& catalog,
                                          Address label, int max_gap,
                                          const AssignmentState& state,
                                          DirectionMask directions) {
  return assignable(sheet, catalog, label, max_gap, state, directions, false, nullptr, {});
}

std::vector<Address> semantic_assignable(const Sheet& sheet, const LabelCatalog& catalog,
                                         Address label, int max_gap,
                                         const AssignmentState& state,
                                         DirectionMask directions) {
  return assignable(sheet, catalog, label, max_gap, state, directions, true, nullptr, {});
}

bool dense(const Sheet& sheet, std::span<const Address> set, Address a, Address b,
           int max_gap) {
  if (max_gap < 0) throw std::invalid_argument("max_gap must be non-negative");
  const bool row_line = a.row == b.row;
  const bool column_line = a.column == b.column;
  if (!row_line && !column_line) {
    throw std::invalid_argument("dense: " + to_a1(a) + " and " + to_a1(b) +
                                " are not collinear");
  }
  // Degenerate same-cell query.
  if (a == b) return true;
  const bool vertical = column_line && a.row != b.row;
  for (Address m : set) {
    if (vertical ? m.column != a.column : m.row != a.row) {
      throw std::invalid_argument("dense: set member " + to_a1(m) +
                                  " is not collinear with the queried cells");
    }
  }

  auto coord = [&](Address x) { return vertical ? x.row : x.column; };
  auto empty_between = [&](Address x, Address y) {
    const int span = std::abs(coord(x) - coord(y)) - 1;
    return span - static_cast<int>(cells_between(sheet, x, y).size());
  };

  // Witnesses must come from the set; order them along the axis and check
  // the chain of gaps between consecutive set members spanning [a, b].
  std::vector<Address> line(set.begin(), set.end());
  std::sort(line.begin(), line.end(), [&](Address x, Address y) { return coord(x) < coord(y); });
  const int lo = std::min(coord(a), coord(b));
  const int hi = std::max(coord(a), coord(b));
  int prev = lo;
  for (Address m : line) {
    if (coord(m) <= lo || coord(m) >= hi) continue;
    Address prev_addr = vertical ? Address{a.column, prev} : Address{prev, a.row};
    if (empty_between(prev_addr, m) > max_gap) return false;
    prev = coord(m);
  }
  Address prev_addr = vertical ? Address{a.column, prev} : Address{prev, a.row};
  Address hi_addr = vertical ? Address{a.column, hi} : Address{hi, a.row};
  return empty_between(prev_addr, hi_addr) <= max_gap;
}

ConflictOutcome resolve_label_conflict(Address cell,
                                       std::span<const ConflictCandidate> candidates) {
  (void)cell;
  if (candidates.empty()) return ConflictOutcome{true, {}, false};
  if (candidates.size() == 1) return ConflictOutcome{false, candidates[0].label, false};

  const ConflictCandidate* best = &candidates[0];
  bool all_same_kind = true;
  for (const auto& cand : candidates) {
    if (cand.kind != best->kind) all_same_kind = false;
    if (hierarchy_rank(cand.kind) < hierarchy_rank(best->kind)) best = &cand;
  }
  if (!all_same_kind) return ConflictOutcome{false, best->label, false};

  if (best->kind == LabelKind::Plain) {
    // No kind relates the labels, so the assignment is genuinely ambiguous.
    return ConflictOutcome{true, {}, false};
  }
  // Same classified kind: the labels are equivalent. Prefer the vertical
  // label (the one describing the cell's row, claiming rightwards).
  for (const auto& cand : candidates) {
    if (cand.via == Direction::Right) return ConflictOutcome{false, cand.label, true};
  }
  return ConflictOutcome{false, candidates[0].label, true};
}

Orientation infer_orientation(const LabelCatalog& catalog, const LayoutArea& area) {
  if (auto unit = catalog.unit_of(area.label)) {
    if (*unit < static_cast<int>(catalog.chains().size())) {
      const LabelChain& chain = catalog.chains()[*unit];
      return chain.axis == Axis::Vertical ? Orientation::RowOriented
                                          : Orientation::ColumnOriented;
    }
    const IdentityGroup& group = catalog.groups()[*unit - catalog.chains().size()];
    bool same_row = true;
    bool same_column = true;
    for (Address a : group.members) {
      same_row = same_row && a.row == group.members.front().row;
      same_column = same_column && a.column == group.members.front().column;
    }
    if (same_row && !same_column) return Orientation::ColumnOriented;
    if (same_column && !same_row) return Orientation::RowOriented;
  }
  // Plain labels (and scattered identity groups) inherit the axis their
  // cells extend along; ties resolve to row-oriented.
  int rightward = 0;
  int downward = 0;
  for (Address cell : area.cells) {
    if (cell.row == area.label.row) ++rightward;
    if (cell.column == area.label.column) ++downward;
  }
  return downward > rightward ? Orientation::ColumnOriented : Orientation::RowOriented;
}

namespace {

struct WaveLabel {
  Address label{};
  LabelKind kind = LabelKind::Plain;
  DirectionMask directions{};
};

struct WaveContext {
  const Sheet& sheet;
  const LabelCatalog& catalog;
  AssignmentState& state;
  AnalysisResult& result;
  int max_gap;
};

DirectionMask chain_mask(Axis axis) {
  // A vertical run describes rows, so its members claim rightwards.
  if (axis == Axis::Vertical) return DirectionMask{false, true};
  return DirectionMask{true, false};
}

DirectionMask group_mask(const IdentityGroup& group) {
  bool same_row = true;
  bool same_column = true;
  for (Address a : group.members) {
    same_row = same_row && a.row == group.members.front().row;
    same_column = same_column && a.column == group.members.front().column;
  }
  if (same_row && !same_column) return DirectionMask{true, false};
  if (same_column && !same_row) return DirectionMask{false, true};
  return DirectionMask{true, true};  // scattered group
}

/// One simultaneous assignment wave: candidate walks against the pre-wave
/// ownership, per-cell conflict resolution, then a commit pass per label
/// that re-walks with cells resolved to other labels acting as blockers.
void run_wave(WaveContext& ctx, std::span<const WaveLabel> labels, int heuristic,
              bool semantic, bool record_ambiguous) {
  struct CellClaims {
    std::vector<ConflictCandidate> candidates;
  };
  std::map<Address, CellClaims> claims;
  for (const WaveLabel& wl : labels) {
    for (Direction dir : {Direction::Down, Direction::Right}) {
      DirectionMask mask{dir == Direction::Down, dir == Direction::Right};
      if ((dir == Direction::Down && !wl.directions.down) ||
          (dir == Direction::Right && !wl.directions.right)) {
        continue;
      }
      auto cells = assignable(ctx.sheet, ctx.catalog, wl.label, ctx.max_gap, ctx.state,
                              mask, semantic, nullptr, {});
      for (Address cell : cells) {
        claims[cell].candidates.push_back(ConflictCandidate{wl.label, wl.kind, dir});
      }
    }
  }

  std::map<Address, Address> resolved;
  for (const auto& [cell, claim] : claims) {
    ConflictOutcome outcome = resolve_label_conflict(cell, claim.candidates);
    if (outcome.ambiguous) {
      if (record_ambiguous) {
        AmbiguousCell record;
        record.cell = cell;
        for (const auto& cand : claim.candidates) record.candidates.push_back(cand.label);
        std::sort(record.candidates.begin(), record.candidates.end());
        ctx.result.ambiguous.push_back(std::move(record));
      }
      continue;
    }
    resolved.emplace(cell, outcome.chosen);
    if (outcome.equivalent_choice) {
      for (const auto& cand : claim.candidates) {
        if (cand.label != outcome.chosen) {
          ctx.result.equivalent_choices.push_back(
              EquivalentChoice{cell, outcome.chosen, cand.label});
        }
      }
    }
  }

  for (const WaveLabel& wl : labels) {
    auto reachable = assignable(ctx.sheet, ctx.catalog, wl.label, ctx.max_gap, ctx.state,
                                wl.directions, semantic, &resolved, wl.label);
    std::vector<Address> committed;
    for (Address cell : reachable) {
      auto it = resolved.find(cell);
      if (it != resolved.end() && it->second == wl.label) committed.push_back(cell);
    }
    if (committed.empty()) continue;
    LayoutArea area;
    area.label = wl.label;
    area.label_kind = wl.kind;
    area.heuristic = heuristic;
    area.cells = std::move(committed);
    area.orientation = infer_orientation(ctx.catalog, area);
    for (Address cell : area.cells) ctx.state.claim(cell, wl.label);
    ctx.result.areas.push_back(std::move(area));
  }
}

bool owns_area(const AnalysisResult& result, Address label) {
  for (const auto& area : result.areas) {
    if (area.label == label) return true;
  }
  return false;
}

}  // namespace

AnalysisResult run_pipeline(const Sheet& sheet, const PipelineConfig& config) {
  if (config.max_gap < 0) throw std::invalid_argument("max_gap must be non-negative");

  AnalysisResult result;
  result.max_gap = config.max_gap;
  ClassifyOptions classify_options;
  classify_options.step = config.step;
  classify_options.chain_order = config.chain_order;
  result.catalog = classify_labels(sheet, config.dictionaries, classify_options);
  const LabelCatalog& catalog = result.catalog;

  AssignmentState state;
  WaveContext ctx{sheet, catalog, state, result, config.max_gap};

  // H1: one wave per chain kind, in the configured hierarchy order.
  for (LabelKind kind : config.chain_order) {
    std::vector<WaveLabel> wave;
    for (const LabelChain& chain : catalog.chains()) {
      if (chain.kind != kind) continue;
      for (Address member : chain.members) {
        wave.push_back(WaveLabel{member, kind, chain_mask(chain.axis)});
      }
    }
    std::sort(wave.begin(), wave.end(),
              [](const WaveLabel& a, const WaveLabel& b) { return a.label < b.label; });
    run_wave(ctx, wave, 1, false, false);
  }

  // H2: complete identity, then partial identity.
  for (LabelKind kind : {LabelKind::CompleteIdentity, LabelKind::PartialIdentity}) {
    std::vector<WaveLabel> wave;
    for (const IdentityGroup& group : catalog.groups()) {
      if (group.kind != kind) continue;
      DirectionMask mask = group_mask(group);
      for (Address member : group.members) {
        wave.push_back(WaveLabel{member, kind, mask});
      }
    }
    std::sort(wave.begin(), wave.end(),
              [](const WaveLabel& a, const WaveLabel& b) { return a.label < b.label; });
    run_wave(ctx, wave, 2, false, false);
  }

  // H3: semantic assignment for every label that owns no area yet.
  {
    std::vector<WaveLabel> wave;
    for (Address label : catalog.labels()) {
      if (owns_area(result, label)) continue;
      wave.push_back(WaveLabel{label, catalog.kind_of(label), DirectionMask{}});
    }
    run_wave(ctx, wave, 3, true, false);
  }

  // H4: bare geometric assignment; labels are reusable.
  {
    std::vector<WaveLabel> wave;
    for (Address label : catalog.labels()) {
      wave.push_back(WaveLabel{label, catalog.kind_of(label), DirectionMask{}});
    }
    run_wave(ctx, wave, 4, false, true);
  }

  for (const auto& [addr, cell] : sheet.cells()) {
    (void)cell;
    if (catalog.is_label(addr)) continue;
    if (!state.owned(addr)) result.unassigned.push_back(addr);
  }
  return result;
}

}  // namespace layout
