#pragma once

#include <map>
#include <span>
#include <vector>

#include "layout/labels.hpp"
#include "layout/sheet.hpp"

namespace layout {

enum class Orientation { RowOriented, ColumnOriented };
std::string_view orientation_name(Orientation o);

/// A label together with the cells assigned to it. The label is itself a
/// member of the area; `cells` lists only the assigned non-label cells.
struct LayoutArea {
  Address label{};
  LabelKind label_kind = LabelKind::Plain;
  int heuristic = 0;  // 1..4
  Orientation orientation = Orientation::RowOriented;
  std::vector<Address> cells;  // sorted by address
};

/// Tracks single ownership: each cell belongs to at most one label.
class AssignmentState {
 public:
  bool owned(Address cell) const { return owner_.count(cell) > 0; }
  void claim(Address cell, Address label) { owner_.emplace(cell, label); }
  const Address* owner_of(Address cell) const {
    auto it = owner_.find(cell);
    return it == owner_.end() ? nullptr : &it->second;
  }
  const std::map<Address, Address>& owners() const { return owner_; }

 private:
  std::map<Address, Address> owner_;  // cell -> label
};

/// Claim directions for one label. Chain labels claim across their chain
/// axis (a vertical run describes rows, so its members claim rightwards);
/// plain labels claim both ways.
struct DirectionMask {
  bool down = true;
  bool right = true;
};

enum class Direction { Down, Right };

/// The cells geometrically assignable to `label` (Definition-6 semantics):
/// non-label, non-text cells below or right of the label with no other
/// label between, walked outwards from the label and truncated at the first
/// spot where more than `max_gap` empty positions separate the next
/// candidate from the last one. Cells owned in `state` end the walk; the
/// gap between the label and the first candidate is not constrained.
std::vector<Address> geometric_assignable(const Sheet& sheet, const LabelCatalog& catalog,
                                          Address label, int max_gap,
                                          const AssignmentState& state,
                                          DirectionMask directions = {});

/// The subset of geometric_assignable whose cells carry the label's
/// formatting (or an Undefined value) with no differently formatted cell
/// between label and cell.
std::vector<Address> semantic_assignable(const Sheet& sheet, const LabelCatalog& catalog,
                                         Address label, int max_gap,
                                         const AssignmentState& state,
                                         DirectionMask directions = {});

/// The dense predicate: `a` and `b` are separated by at most `max_gap`
/// empty positions, or a witness in `set` links them transitively. All of
/// `set`, `a`, `b` must lie on one row or one column; throws
/// std::invalid_argument otherwise.
bool dense(const Sheet& sheet, std::span<const Address> set, Address a, Address b,
           int max_gap);

struct ConflictCandidate {
  Address label{};
  LabelKind kind = LabelKind::Plain;
  Direction via = Direction::Down;
};

struct ConflictOutcome {
  bool ambiguous = false;
  Address chosen{};
  bool equivalent_choice = false;
};

/// Resolves a cell claimable by several labels. Different kinds: the kind
/// earlier in the hierarchy wins. Same classified kind: the labels are
/// equivalent, the one claiming along the row (the vertical label, left of
/// the cell) is chosen and the choice flagged. Two plain labels: ambiguous,
/// the cell stays unassigned.
ConflictOutcome resolve_label_conflict(Address cell,
                                       std::span<const ConflictCandidate> candidates);

struct EquivalentChoice {
  Address cell{};
  Address chosen{};
  Address alternative{};
};

struct AmbiguousCell {
  Address cell{};
  std::vector<Address> candidates;
};

struct PipelineConfig {
  int max_gap = 0;
  long step = 1;
  std::vector<OrdinalDictionary> dictionaries;
  std::vector<LabelKind> chain_order = {LabelKind::RunningNumber, LabelKind::OrdinalLabel,
                                        LabelKind::Counter};
};

struct AnalysisResult {
  LabelCatalog catalog;
  std::vector<LayoutArea> areas;  // pipeline emission order
  /// Non-label, non-empty cells owned by no area (includes the ambiguous ones).
  std::vector<Address> unassigned;
  std::vector<AmbiguousCell> ambiguous;
  std::vector<EquivalentChoice> equivalent_choices;
  int max_gap = 0;
};

/// Runs the four heuristics in order: H1 assigns to running-number, ordinal
/// and counter chains (immediately after each kind), H2 to complete- and
/// partial-identity groups, H3 semantically to the remaining labels, H4
/// geometrically to any label, reusable. Analysis always completes.
AnalysisResult run_pipeline(const Sheet& sheet, const PipelineConfig& config = {});

/// Chain areas inherit the chain axis (vertical run -> row-oriented);
/// identity areas the group's arrangement; plain-label areas the axis their
/// cells extend along (ties resolve to row-oriented).
Orientation infer_orientation(const LabelCatalog& catalog, const LayoutArea& area);

}  // namespace layout
