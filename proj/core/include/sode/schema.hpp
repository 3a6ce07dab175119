#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sode {

using AttrIndex = std::uint32_t;
using AttrValue = std::uint32_t;
using SeasonValue = std::uint32_t;
using ClassIndex = std::uint32_t;
using LabelId = std::uint32_t;
using Count = std::uint64_t;

// Discrete attribute space shared by a store and the classifiers built on it:
// n attributes with fixed cardinalities plus a season dimension of cardinality
// T (T == 1 models a season-blind learner). Immutable once a store exists.
struct AttributeSchema {
  std::vector<AttrValue> cardinalities;  // size n, every entry >= 2
  SeasonValue season_cardinality = 1;    // T >= 1

  AttrIndex attribute_count() const {
    return static_cast<AttrIndex>(cardinalities.size());
  }
  bool all_binary() const {
    for (AttrValue c : cardinalities)
      if (c != 2) return false;
    return true;
  }
  // Throws SchemaError when the schema itself is ill-formed.
  void validate() const;

  // Convenience: n binary attributes, T seasons.
  static AttributeSchema binary(AttrIndex n, SeasonValue seasons);

  bool operator==(const AttributeSchema&) const = default;
};

// One observation. `values` is sparse and kept sorted by attribute index; how
// an absent entry is read depends on the store backend: value 0 for the
// binary-sparse backend, "unknown" for the general backend. `season` is empty
// when the season is unknown. `labels` (sorted label ids) is only meaningful
// at training time.
struct Instance {
  std::vector<std::pair<AttrIndex, AttrValue>> values;
  std::optional<SeasonValue> season;
  std::vector<LabelId> labels;

  // Insert or overwrite one attribute value, keeping `values` sorted.
  void set(AttrIndex i, AttrValue v);
  std::optional<AttrValue> get(AttrIndex i) const;
};

}  // namespace sode
