#include "sode/class_catalog.hpp"

#include <algorithm>

#include "sode/binary_io.hpp"
#include "sode/errors.hpp"

namespace sode {

LabelId ClassCatalog::intern_label(std::string_view name) {
  if (name.empty()) throw Error("empty label name");
  auto it = label_ids_.find(std::string(name));
  if (it != label_ids_.end()) return it->second;
  const LabelId id = static_cast<LabelId>(labels_.size());
  labels_.emplace_back(name);
  label_ids_.emplace(labels_.back(), id);
  return id;
}

std::optional<LabelId> ClassCatalog::find_label(std::string_view name) const {
  auto it = label_ids_.find(std::string(name));
  if (it == label_ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& ClassCatalog::label_name(LabelId id) const {
  if (id >= labels_.size()) throw Error("label id out of range");
  return labels_[id];
}

ClassIndex ClassCatalog::intern_class(const std::vector<LabelId>& labels) {
  if (labels.empty()) throw Error("empty label set cannot become a class");
  if (!std::is_sorted(labels.begin(), labels.end()) ||
      std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw Error("label set must be sorted and duplicate-free");
  for (LabelId id : labels)
    if (id >= labels_.size()) throw Error("label id out of range");
  auto it = class_ids_.find(labels);
  if (it != class_ids_.end()) return it->second;
  const ClassIndex y = static_cast<ClassIndex>(classes_.size());
  classes_.push_back(labels);
  class_ids_.emplace(labels, y);
  return y;
}

std::optional<ClassIndex> ClassCatalog::find_class(
    const std::vector<LabelId>& labels) const {
  auto it = class_ids_.find(labels);
  if (it == class_ids_.end()) return std::nullopt;
  return it->second;
}

const std::vector<LabelId>& ClassCatalog::class_labels(ClassIndex y) const {
  if (y >= classes_.size()) throw Error("class index out of range");
  return classes_[y];
}

std::vector<std::string> ClassCatalog::sorted_label_names() const {
  std::vector<std::string> names = labels_;
  std::sort(names.begin(), names.end());
  return names;
}

void ClassCatalog::save(BinaryWriter& w) const {
  w.u32(static_cast<std::uint32_t>(labels_.size()));
  for (const std::string& l : labels_) w.str(l);
  w.u32(static_cast<std::uint32_t>(classes_.size()));
  for (const auto& cls : classes_) {
    w.u32(static_cast<std::uint32_t>(cls.size()));
    for (LabelId id : cls) w.u32(id);
  }
}

ClassCatalog ClassCatalog::load(PayloadReader& r) {
  ClassCatalog cat;
  const std::uint32_t label_count = r.u32();
  for (std::uint32_t i = 0; i < label_count; ++i) {
    const std::string name = r.str();
    if (name.empty() || cat.label_ids_.count(name))
      throw DecodeError("invalid label table");
    cat.labels_.push_back(name);
    cat.label_ids_.emplace(name, i);
  }
  const std::uint32_t class_count = r.u32();
  for (std::uint32_t y = 0; y < class_count; ++y) {
    const std::uint32_t size = r.u32();
    std::vector<LabelId> cls(size);
    for (std::uint32_t j = 0; j < size; ++j) {
      cls[j] = r.u32();
      if (cls[j] >= cat.labels_.size()) throw DecodeError("label id out of range");
    }
    if (cls.empty() || !std::is_sorted(cls.begin(), cls.end()) ||
        cat.class_ids_.count(cls))
      throw DecodeError("invalid class table");
    cat.classes_.push_back(cls);
    cat.class_ids_.emplace(std::move(cls), y);
  }
  return cat;
}

}  // namespace sode
