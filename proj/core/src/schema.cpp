#include "sode/schema.hpp"

#include <algorithm>
#include <string>

#include "sode/errors.hpp"

namespace sode {

void AttributeSchema::validate() const {
  if (season_cardinality < 1)
    throw SchemaError("schema: season cardinality must be >= 1");
  for (std::size_t i = 0; i < cardinalities.size(); ++i) {
    if (cardinalities[i] < 2)
      throw SchemaError("schema: attribute " + std::to_string(i) +
                        " has cardinality " + std::to_string(cardinalities[i]) +
                        ", need >= 2");
  }
}

AttributeSchema AttributeSchema::binary(AttrIndex n, SeasonValue seasons) {
  AttributeSchema s;
  s.cardinalities.assign(n, 2);
  s.season_cardinality = seasons;
  return s;
}

void Instance::set(AttrIndex i, AttrValue v) {
  auto it = std::lower_bound(values.begin(), values.end(), i,
                             [](const auto& p, AttrIndex k) { return p.first < k; });
  if (it != values.end() && it->first == i)
    it->second = v;
  else
    values.insert(it, {i, v});
}

std::optional<AttrValue> Instance::get(AttrIndex i) const {
  auto it = std::lower_bound(values.begin(), values.end(), i,
                             [](const auto& p, AttrIndex k) { return p.first < k; });
  if (it != values.end() && it->first == i) return it->second;
  return std::nullopt;
}

}  // namespace sode
