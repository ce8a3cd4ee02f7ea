#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "layout/labels.hpp"
#include "layout/sheet.hpp"

namespace testsupport::oracle {

using layout::Address;
using layout::AddressSet;
using layout::Sheet;

using AddressPair = std::pair<Address, Address>;

/// Literal Definition-1 pairs: both numeric, value(second) = value(first) +
/// step, same row or column with no non-empty cell strictly between
/// (checked by scanning every cell of the sheet). Claimed cells cannot be
/// pair members.
std::set<AddressPair> running_pairs(const Sheet& sheet, long step,
                                    const AddressSet& claimed);

/// Pairs of dictionary labels whose images satisfy the Definition-1 rule.
std::set<AddressPair> ordinal_pairs(const Sheet& sheet,
                                    const layout::OrdinalDictionary& dict, long step,
                                    const AddressSet& claimed);

/// Definition-3 pairs: same stem on the same side, attached numbers running.
std::set<AddressPair> counter_pairs(const Sheet& sheet, long step,
                                    const AddressSet& claimed);

/// Assembles maximal chains from qualifying pairs, vertical chains first (a
/// cell taken by a vertical chain breaks horizontal pairs through it).
std::vector<std::vector<Address>> chains_from_pairs(const std::set<AddressPair>& pairs);

/// Definition-4: byte-equal label values, groups of two or more.
std::vector<std::vector<Address>> complete_groups(const Sheet& sheet,
                                                  const AddressSet& claimed);

/// Definition-5 predicate by brute force over every word split: the labels
/// share an identical proper prefix or suffix of whole words.
bool partial_identity_pair(const std::string& a, const std::string& b);

/// Empty positions strictly between two collinear addresses.
int empty_between(const Sheet& sheet, Address a, Address b);

/// The dense predicate evaluated per its recursive definition: direct gap
/// within max_gap, or any witness chain through members of `set`.
bool dense(const Sheet& sheet, const std::vector<Address>& set, Address a, Address b,
           int max_gap);

/// Definition-6 walk on a materialized grid: candidates below or right of
/// the label, stopping at labels and owned cells, text cells passing
/// through, truncated at the first candidate whose empty gap from the
/// previous one exceeds max_gap.
std::vector<Address> geometric_assignable(const Sheet& sheet, const AddressSet& labels,
                                          Address label, int max_gap,
                                          const AddressSet& owned, bool down, bool right);

}  // namespace testsupport::oracle
