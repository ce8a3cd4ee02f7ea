#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "layout/sheet.hpp"

namespace layout {

/// The five label kinds in hierarchy order, plus Plain for unclassified
/// labels. A smaller rank means higher priority.
enum class LabelKind {
  RunningNumber,
  OrdinalLabel,
  Counter,
  CompleteIdentity,
  PartialIdentity,
  Plain,
};

int hierarchy_rank(LabelKind kind);
std::string_view label_kind_name(LabelKind kind);

/// Horizontal chains run rightwards along a row; vertical chains run
/// downwards along a column.
enum class Axis { Horizontal, Vertical };

/// For counters: whether the number precedes or follows the word.
enum class NumberSide { Leading, Trailing };

/// A maximal run of same-kind labels along one axis. Members are listed in
/// axis order; consecutive members have no other non-empty cell between
/// them and their values (or mapped/extracted numbers) differ by `step`.
struct LabelChain {
  LabelKind kind{};
  Axis axis{};
  std::vector<Address> members;
  long step = 1;
  std::string stem;          // counters only
  NumberSide number_side{};  // counters only
  std::string dictionary;    // ordinal labels only
};

/// Labels with byte-equal values (complete) or sharing a proper word prefix
/// or suffix (partial).
struct IdentityGroup {
  LabelKind kind{};  // CompleteIdentity or PartialIdentity
  std::vector<Address> members;
  std::string shared;  // the common value, or the shared word stem
  enum class Side { Prefix, Suffix } side = Side::Prefix;
};

/// Injective mapping from label strings to ordinal numbers.
struct OrdinalDictionary {
  std::string name;
  std::map<std::string, long> entries;
};

/// Throws ConfigError if two keys share an image.
void validate_injective(const OrdinalDictionary& dict);

/// Parses a JSON object {"January": 1, ...}. Throws DocumentError on
/// malformed JSON, ConfigError if not injective.
OrdinalDictionary load_ordinal_dictionary(std::string_view json_text, std::string name);

/// English month and weekday names.
std::vector<OrdinalDictionary> builtin_ordinal_dictionaries();

/// Builtins plus user dictionaries. User entries shadow builtin entries with
/// the same key, and user dictionaries are consulted first.
std::vector<OrdinalDictionary> merge_dictionaries(
    std::vector<OrdinalDictionary> user_dictionaries);

using AddressSet = std::set<Address>;

/// Maximal runs of numeric cells whose values grow by `step` with no other
/// non-empty cell between consecutive members. Cells in `claimed` cannot be
/// members but still break adjacency. A cell can belong to only one chain;
/// vertical runs take precedence over horizontal ones.
std::vector<LabelChain> detect_running_numbers(const Sheet& sheet, long step = 1,
                                               const AddressSet* claimed = nullptr);

/// Maps text labels through the dictionary and applies the running-number
/// chain rule to the images. Throws ConfigError on a non-injective
/// dictionary.
std::vector<LabelChain> detect_ordinal_labels(const Sheet& sheet,
                                              const OrdinalDictionary& dict,
                                              long step = 1,
                                              const AddressSet* claimed = nullptr);

/// Splits text labels into word + attached integer (at most one blank in
/// between, number leading or trailing) and chains equal stems whose
/// numbers run by `step`.
std::vector<LabelChain> detect_counters(const Sheet& sheet, long step = 1,
                                        const AddressSet* claimed = nullptr);

struct IdentityGroups {
  std::vector<IdentityGroup> complete;
  std::vector<IdentityGroup> partial;
};

/// Complete groups collect byte-equal labels; partial groups collect
/// multi-word labels sharing a proper word prefix or suffix, maximizing the
/// shared length greedily (prefix wins ties). Complete membership takes
/// precedence; every label lands in at most one group.
IdentityGroups detect_identity_groups(const Sheet& sheet,
                                      const AddressSet* claimed = nullptr);

struct ClassifyOptions {
  long step = 1;
  /// Detection/assignment order of the chain kinds. The default is the
  /// hierarchy order; tests may reorder it to probe order sensitivity.
  std::vector<LabelKind> chain_order = {LabelKind::RunningNumber,
                                        LabelKind::OrdinalLabel, LabelKind::Counter};
};

/// Everything the assignment pipeline knows about labels. `labels()` holds
/// all label cells: text cells without formulas plus the numeric members of
/// running-number chains.
class LabelCatalog {
 public:
  const std::vector<LabelChain>& chains() const { return chains_; }
  const std::vector<IdentityGroup>& groups() const { return groups_; }
  const std::vector<Address>& plain() const { return plain_; }
  const AddressSet& labels() const { return labels_; }

  bool is_label(Address a) const { return labels_.count(a) > 0; }
  /// Plain for labels outside every chain/group; must be a label.
  LabelKind kind_of(Address a) const;
  /// Identifier of the chain (0..chains-1) or group (chains +
  /// group index) containing the label, if any.
  std::optional<int> unit_of(Address a) const;
  int unit_count() const { return static_cast<int>(chains_.size() + groups_.size()); }
  std::string unit_description(int unit) const;
  LabelKind unit_kind(int unit) const;

 private:
  friend LabelCatalog classify_labels(const Sheet&, std::span<const OrdinalDictionary>,
                                      const ClassifyOptions&);

  std::vector<LabelChain> chains_;
  std::vector<IdentityGroup> groups_;  // complete groups first, then partial
  std::vector<Address> plain_;
  AddressSet labels_;
  std::map<Address, int> membership_;
};

/// Runs the detectors in hierarchy order (chains per `chain_order`, then
/// complete and partial identity); cells claimed by an earlier kind are
/// invisible to later detectors. The residue of unclassified labels is kept
/// as plain.
LabelCatalog classify_labels(const Sheet& sheet,
                             std::span<const OrdinalDictionary> dictionaries,
                             const ClassifyOptions& options = {});

}  // namespace layout
