#include "layout/labels.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <tuple>

#include <json.hpp>

#include "layout/errors.hpp"

namespace layout {

int hierarchy_rank(LabelKind kind) { return static_cast<int>(kind); }

std::string_view label_kind_name(LabelKind kind) {
  switch (kind) {
    case LabelKind::RunningNumber: return "running-number";
    case LabelKind::OrdinalLabel: return "ordinal-label";
    case LabelKind::Counter: return "counter";
    case LabelKind::CompleteIdentity: return "complete-identity";
    case LabelKind::PartialIdentity: return "partial-identity";
    case LabelKind::Plain: return "plain";
  }
  return "?";
}

void validate_injective(const OrdinalDictionary& dict) {
  std::map<long, const std::string*> seen;
  for (const auto& [key, value] : dict.entries) {
    auto [it, inserted] = seen.emplace(value, &key);
    if (!inserted) {
      throw ConfigError("ordinal dictionary \"" + dict.name + "\" is not injective: \"" +
                        *it->second + "\" and \"" + key + "\" both map to " +
                        std::to_string(value));
    }
  }
}

OrdinalDictionary load_ordinal_dictionary(std::string_view json_text, std::string name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError("malformed ordinal dictionary \"" + name + "\": " + e.what());
  }
  if (!doc.is_object()) {
    throw DocumentError("ordinal dictionary \"" + name + "\" must be a JSON object");
  }
  OrdinalDictionary dict;
  dict.name = std::move(name);
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number_integer()) {
      throw DocumentError("ordinal dictionary \"" + dict.name + "\": value for \"" + key +
                          "\" must be an integer");
    }
    dict.entries[key] = value.get<long>();
  }
  validate_injective(dict);
  return dict;
}

std::vector<OrdinalDictionary> builtin_ordinal_dictionaries() {
  std::vector<OrdinalDictionary> out;
  OrdinalDictionary months;
  months.name = "months";
  const char* month_names[] = {"January", "February", "March",     "April",   "May",
                               "June",    "July",     "August",    "September",
                               "October", "November", "December"};
  long n = 1;
  for (const char* name : month_names) months.entries[name] = n++;
  out.push_back(std::move(months));

  OrdinalDictionary weekdays;
  weekdays.name = "weekdays";
  const char* day_names[] = {"Monday", "Tuesday",  "Wednesday", "Thursday",
                             "Friday", "Saturday", "Sunday"};
  n = 1;
  for (const char* name : day_names) weekdays.entries[name] = n++;
  out.push_back(std::move(weekdays));
  return out;
}

std::vector<OrdinalDictionary> merge_dictionaries(
    std::vector<OrdinalDictionary> user_dictionaries) {
  std::vector<OrdinalDictionary> out = std::move(user_dictionaries);
  for (auto& builtin : builtin_ordinal_dictionaries()) {
    for (const auto& user : out) {
      for (const auto& [key, value] : user.entries) {
        (void)value;
        builtin.entries.erase(key);
      }
    }
    out.push_back(std::move(builtin));
  }
  return out;
}

namespace {

bool is_claimed(const AddressSet* claimed, Address a) {
  return claimed != nullptr && claimed->count(a) > 0;
}

/// Walks the non-empty cells of every column (then every row) and collects
/// maximal runs of consecutive entries where `pair_value` yields numbers
/// differing by `step`. Consecutive entries of a line have no other
/// non-empty cell between them by construction.
template <typename ValueOf>
std::vector<LabelChain> chain_scan(const Sheet& sheet, long step,
                                   const AddressSet* claimed, ValueOf&& value_of,
                                   LabelKind kind) {
  std::vector<LabelChain> chains;
  AddressSet in_chain;  // vertical members; horizontal runs may not reuse them

  auto scan_line = [&](std::span<const Address> line, Axis axis) {
    std::vector<Address> run;
    bool has_prev = false;
    long double prev_value = 0;
    auto flush = [&] {
      if (run.size() >= 2) {
        LabelChain chain;
        chain.kind = kind;
        chain.axis = axis;
        chain.members = run;
        chain.step = step;
        for (Address a : run) in_chain.insert(a);
        chains.push_back(std::move(chain));
      }
      run.clear();
      has_prev = false;
    };
    for (Address addr : line) {
      std::optional<long double> value;
      if (!is_claimed(claimed, addr) && in_chain.count(addr) == 0) {
        value = value_of(addr);
      }
      if (!value) {
        flush();
        continue;
      }
      if (has_prev && *value == prev_value + static_cast<long double>(step)) {
        run.push_back(addr);
      } else {
        flush();
        run.push_back(addr);
      }
      prev_value = *value;
      has_prev = true;
    }
    flush();
  };

  if (const auto& bounds = sheet.bounds()) {
    for (int col = bounds->min.column; col <= bounds->max.column; ++col) {
      scan_line(sheet.column_cells(col), Axis::Vertical);
    }
    for (int row = bounds->min.row; row <= bounds->max.row; ++row) {
      scan_line(sheet.row_cells(row), Axis::Horizontal);
    }
  }
  return chains;
}

struct CounterParts {
  std::string stem;
  long number = 0;
  NumberSide side = NumberSide::Trailing;
};

/// "Quarter 1" -> ("Quarter", 1, Trailing); "1 Quarter" -> leading. At most
/// one blank between word and number; the word part must be non-empty and
/// may not end (or start) in a blank.
std::optional<CounterParts> split_counter(const std::string& text) {
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  auto parse_long = [](std::string_view digits) -> std::optional<long> {
    if (digits.empty() || digits.size() > 17) return std::nullopt;
    long v = 0;
    for (char c : digits) v = v * 10 + (c - '0');
    return v;
  };

  // Trailing number.
  std::size_t end = text.size();
  while (end > 0 && is_digit(text[end - 1])) --end;
  if (end < text.size()) {
    auto number = parse_long(std::string_view(text).substr(end));
    std::size_t stem_end = end;
    if (stem_end > 0 && text[stem_end - 1] == ' ') --stem_end;
    if (number && stem_end > 0 && text[stem_end - 1] != ' ') {
      return CounterParts{text.substr(0, stem_end), *number, NumberSide::Trailing};
    }
  }

  // Leading number.
  std::size_t start = 0;
  while (start < text.size() && is_digit(text[start])) ++start;
  if (start > 0 && start < text.size()) {
    auto number = parse_long(std::string_view(text).substr(0, start));
    std::size_t stem_start = start;
    if (text[stem_start] == ' ') ++stem_start;
    if (number && stem_start < text.size() && text[stem_start] != ' ') {
      return CounterParts{text.substr(stem_start), *number, NumberSide::Leading};
    }
  }
  return std::nullopt;
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    if (c == ' ' || c == '\t') {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::string join_words(std::span<const std::string> words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

void sort_groups(std::vector<IdentityGroup>& groups) {
  std::sort(groups.begin(), groups.end(), [](const IdentityGroup& a, const IdentityGroup& b) {
    return a.members.front() < b.members.front();
  });
}

}  // namespace

std::vector<LabelChain> detect_running_numbers(const Sheet& sheet, long step,
                                               const AddressSet* claimed) {
  return chain_scan(
      sheet, step, claimed,
      [&](Address addr) -> std::optional<long double> {
        const Cell* cell = sheet.find(addr);
        if (!cell || !cell->value.is_number()) return std::nullopt;
        return static_cast<long double>(cell->value.number_value());
      },
      LabelKind::RunningNumber);
}

std::vector<LabelChain> detect_ordinal_labels(const Sheet& sheet,
                                              const OrdinalDictionary& dict, long step,
                                              const AddressSet* claimed) {
  validate_injective(dict);
  auto chains = chain_scan(
      sheet, step, claimed,
      [&](Address addr) -> std::optional<long double> {
        const Cell* cell = sheet.find(addr);
        if (!cell || !cell->is_text_label()) return std::nullopt;
        auto it = dict.entries.find(cell->value.text_value());
        if (it == dict.entries.end()) return std::nullopt;
        return static_cast<long double>(it->second);
      },
      LabelKind::OrdinalLabel);
  for (auto& chain : chains) chain.dictionary = dict.name;
  return chains;
}

std::vector<LabelChain> detect_counters(const Sheet& sheet, long step,
                                        const AddressSet* claimed) {
  // Chains are over the extracted numbers, but only between labels with an
  // identical stem on the same side. Run one scan per (stem, side) so that a
  // stem change breaks the run just like a foreign cell does.
  std::vector<LabelChain> all;
  std::map<Address, CounterParts> parts;
  std::vector<std::pair<std::string, NumberSide>> keys;
  for (const auto& [addr, cell] : sheet.cells()) {
    if (!cell.is_text_label() || is_claimed(claimed, addr)) continue;
    if (auto split = split_counter(cell.value.text_value())) {
      parts.emplace(addr, *split);
      std::pair<std::string, NumberSide> key{split->stem, split->side};
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
  }
  std::sort(keys.begin(), keys.end());

  AddressSet taken;
  for (const auto& key : keys) {
    auto chains = chain_scan(
        sheet, step, claimed,
        [&](Address addr) -> std::optional<long double> {
          if (taken.count(addr) > 0) return std::nullopt;
          auto it = parts.find(addr);
          if (it == parts.end()) return std::nullopt;
          if (it->second.stem != key.first || it->second.side != key.second) {
            return std::nullopt;
          }
          return static_cast<long double>(it->second.number);
        },
        LabelKind::Counter);
    for (auto& chain : chains) {
      chain.stem = key.first;
      chain.number_side = key.second;
      for (Address a : chain.members) taken.insert(a);
      all.push_back(std::move(chain));
    }
  }
  std::sort(all.begin(), all.end(), [](const LabelChain& a, const LabelChain& b) {
    return a.members.front() < b.members.front();
  });
  return all;
}

IdentityGroups detect_identity_groups(const Sheet& sheet, const AddressSet* claimed) {
  IdentityGroups out;

  std::map<std::string, std::vector<Address>> by_value;
  for (const auto& [addr, cell] : sheet.cells()) {
    if (!cell.is_text_label() || is_claimed(claimed, addr)) continue;
    by_value[cell.value.text_value()].push_back(addr);
  }
  AddressSet in_complete;
  for (auto& [value, members] : by_value) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());
    for (Address a : members) in_complete.insert(a);
    out.complete.push_back(
        IdentityGroup{LabelKind::CompleteIdentity, members, value, IdentityGroup::Side::Prefix});
  }
  sort_groups(out.complete);

  // Partial identity over the remaining multi-word labels: greedily take the
  // longest shared proper prefix (then suffix) of whole words.
  struct Candidate {
    Address addr;
    std::vector<std::string> words;
  };
  std::vector<Candidate> active;
  for (const auto& [addr, cell] : sheet.cells()) {
    if (!cell.is_text_label() || is_claimed(claimed, addr) || in_complete.count(addr)) {
      continue;
    }
    auto words = split_words(cell.value.text_value());
    if (words.size() >= 2) active.push_back(Candidate{addr, std::move(words)});
  }

  while (active.size() >= 2) {
    // (m, side, stem) -> members; pick the longest stem, prefix over suffix,
    // then lexicographically smallest stem.
    std::map<std::tuple<std::size_t, IdentityGroup::Side, std::string>, std::vector<std::size_t>>
        stems;
    for (std::size_t i = 0; i < active.size(); ++i) {
      const auto& words = active[i].words;
      for (std::size_t m = 1; m + 1 <= words.size(); ++m) {
        stems[{m, IdentityGroup::Side::Prefix,
               join_words(std::span(words.data(), m))}]
            .push_back(i);
        stems[{m, IdentityGroup::Side::Suffix,
               join_words(std::span(words.data() + (words.size() - m), m))}]
            .push_back(i);
      }
    }
    const decltype(stems)::value_type* best = nullptr;
    auto better = [](const auto& a, const auto& b) {
      const auto& [am, aside, astem] = a;
      const auto& [bm, bside, bstem] = b;
      if (am != bm) return am > bm;  // longest shared stem first
      if (aside != bside) return aside < bside;  // prefix beats suffix
      return astem < bstem;
    };
    for (const auto& entry : stems) {
      if (entry.second.size() < 2) continue;
      if (!best || better(entry.first, best->first)) best = &entry;
    }
    if (!best) break;
    IdentityGroup group;
    group.kind = LabelKind::PartialIdentity;
    group.side = std::get<1>(best->first);
    group.shared = std::get<2>(best->first);
    for (std::size_t idx : best->second) group.members.push_back(active[idx].addr);
    std::sort(group.members.begin(), group.members.end());
    std::vector<Candidate> rest;
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (std::find(best->second.begin(), best->second.end(), i) == best->second.end()) {
        rest.push_back(std::move(active[i]));
      }
    }
    active = std::move(rest);
    out.partial.push_back(std::move(group));
  }
  sort_groups(out.partial);
  return out;
}

LabelKind LabelCatalog::kind_of(Address a) const {
  auto it = membership_.find(a);
  if (it == membership_.end()) return LabelKind::Plain;
  return unit_kind(it->second);
}

std::optional<int> LabelCatalog::unit_of(Address a) const {
  auto it = membership_.find(a);
  if (it == membership_.end()) return std::nullopt;
  return it->second;
}

LabelKind LabelCatalog::unit_kind(int unit) const {
  if (unit < static_cast<int>(chains_.size())) return chains_[unit].kind;
  return groups_[unit - chains_.size()].kind;
}

std::string LabelCatalog::unit_description(int unit) const {
  if (unit < static_cast<int>(chains_.size())) {
    const LabelChain& chain = chains_[unit];
    return std::string(label_kind_name(chain.kind)) + " chain " +
           to_a1(chain.members.front()) + ":" + to_a1(chain.members.back());
  }
  const IdentityGroup& group = groups_[unit - chains_.size()];
  return std::string(label_kind_name(group.kind)) + " group \"" + group.shared + "\"";
}

LabelCatalog classify_labels(const Sheet& sheet,
                             std::span<const OrdinalDictionary> dictionaries,
                             const ClassifyOptions& options) {
  for (LabelKind kind : options.chain_order) {
    if (kind != LabelKind::RunningNumber && kind != LabelKind::OrdinalLabel &&
        kind != LabelKind::Counter) {
      throw ConfigError("chain_order may only contain the three chain kinds");
    }
  }

  LabelCatalog catalog;
  AddressSet claimed;
  auto claim_chain = [&](std::vector<LabelChain>&& chains) {
    for (auto& chain : chains) {
      for (Address a : chain.members) claimed.insert(a);
      catalog.chains_.push_back(std::move(chain));
    }
  };

  for (LabelKind kind : options.chain_order) {
    switch (kind) {
      case LabelKind::RunningNumber:
        claim_chain(detect_running_numbers(sheet, options.step, &claimed));
        break;
      case LabelKind::OrdinalLabel:
        for (const auto& dict : dictionaries) {
          claim_chain(detect_ordinal_labels(sheet, dict, options.step, &claimed));
        }
        break;
      case LabelKind::Counter:
        claim_chain(detect_counters(sheet, options.step, &claimed));
        break;
      default:
        break;
    }
  }

  IdentityGroups groups = detect_identity_groups(sheet, &claimed);
  for (auto& group : groups.complete) {
    for (Address a : group.members) claimed.insert(a);
    catalog.groups_.push_back(std::move(group));
  }
  for (auto& group : groups.partial) {
    for (Address a : group.members) claimed.insert(a);
    catalog.groups_.push_back(std::move(group));
  }

  for (const auto& [addr, cell] : sheet.cells()) {
    if (cell.is_text_label()) {
      catalog.labels_.insert(addr);
      if (claimed.count(addr) == 0) catalog.plain_.push_back(addr);
    }
  }
  for (const auto& chain : catalog.chains_) {
    if (chain.kind == LabelKind::RunningNumber) {
      for (Address a : chain.members) catalog.labels_.insert(a);
    }
  }

  for (std::size_t i = 0; i < catalog.chains_.size(); ++i) {
    for (Address a : catalog.chains_[i].members) {
      catalog.membership_[a] = static_cast<int>(i);
    }
  }
  for (std::size_t i = 0; i < catalog.groups_.size(); ++i) {
    for (Address a : catalog.groups_[i].members) {
      catalog.membership_[a] = static_cast<int>(catalog.chains_.size() + i);
    }
  }
  return catalog;
}

}  // namespace layout
