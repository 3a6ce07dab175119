#pragma once

// Powerset reduction for multi-label streams: every distinct label SET seen at
// training time becomes one class index. Atomic labels and classes both get
// dense ids in first-seen order, and the mapping stays stable for the life of
// the catalog (and across save/load).

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sode/schema.hpp"

namespace sode {

class BinaryWriter;
class PayloadReader;

class ClassCatalog {
public:
  // Returns the id of `name`, interning it on first sight.
  LabelId intern_label(std::string_view name);
  std::optional<LabelId> find_label(std::string_view name) const;
  const std::string& label_name(LabelId id) const;
  std::size_t label_count() const { return labels_.size(); }

  // Returns the class index of a sorted, duplicate-free label-id set,
  // interning it on first sight. The empty set is rejected.
  ClassIndex intern_class(const std::vector<LabelId>& labels);
  std::optional<ClassIndex> find_class(const std::vector<LabelId>& labels) const;
  const std::vector<LabelId>& class_labels(ClassIndex y) const;
  ClassIndex class_count() const {
    return static_cast<ClassIndex>(classes_.size());
  }

  // Label names sorted lexicographically (the label universe of a report).
  std::vector<std::string> sorted_label_names() const;

  void save(BinaryWriter& w) const;
  static ClassCatalog load(PayloadReader& r);

  bool operator==(const ClassCatalog& other) const {
    return labels_ == other.labels_ && classes_ == other.classes_;
  }

private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, LabelId> label_ids_;
  std::vector<std::vector<LabelId>> classes_;
  std::map<std::vector<LabelId>, ClassIndex> class_ids_;
};

}  // namespace sode
