#pragma once

// Frequency store: the shared counting structure behind every classifier in
// this library. One update pass maintains, per training instance with class y
// and (possibly unknown) season t:
//
//   count                 total instances
//   c_counts[y]           instances per class
//   t_counts[t]           instances per season           (season known)
//   ct_counts[y][t]       instances per class x season   (season known)
//   a_counts[i]           attribute i observed           (season known)
//   av_counts[i][v]       attribute i observed with v    (season known)
//   f[y][t][i][vi][j][vj] joint pair table over every ordered pair of known
//                         attributes, including j == i   (season known)
//
// Attribute statistics are only collected when the season is known; an
// instance with unknown season contributes to count and c_counts alone.
// The pair table is symmetric (f[..i,vi,j,vj] == f[..j,vj,i,vi]) and its
// diagonal f[y][t][i][v][i][v] is the per-(class, season) marginal of i=v.
//
// Two physical backends expose the same logical counters:
//
//  * BinarySparse - for fully observed binary data where an attribute absent
//    from Instance::values means value 0. Stores only present/present pair
//    counts, per-(class, season, attribute) present marginals and the
//    class x season totals; every other cell follows by inclusion-exclusion,
//    so one update costs O(s^2) increments for s present attributes,
//    independent of the schema width n.
//
//  * General - for arbitrary cardinalities and partially observed data where
//    an attribute absent from Instance::values is unknown. Keeps an
//    associative table keyed by the full (y,t,i,vi,j,vj) tuple holding
//    exactly what the update pass touches.
//
// Size limits (checked at construction / update): n <= 65535 attributes,
// cardinalities <= 65535, T <= 4095 seasons, class index < 2^20.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "sode/schema.hpp"

namespace sode {

class BinaryWriter;
class PayloadReader;

enum class StoreBackend : std::uint8_t {
  BinarySparse = 0,
  General = 1,
};

struct UpdateStats {
  Count updates = 0;     // accepted instances
  Count increments = 0;  // physical counter increments performed
};

// Dense count view over the known attributes of one query instance at a fixed
// season, filled by FrequencyStore::gather. With K = attrs.size():
//   marginal[y*K + a]        = f[y][t][attrs[a]][vals[a]][attrs[a]][vals[a]]
//   pair[(y*K + a)*K + b]    = f[y][t][attrs[a]][vals[a]][attrs[b]][vals[b]]
// Scoring loops read these arrays instead of issuing one keyed lookup per
// (class, parent, child) triple.
struct QueryCounts {
  std::vector<AttrIndex> attrs;  // known attributes, ascending
  std::vector<AttrValue> vals;   // observed value per known attribute
  ClassIndex classes = 0;        // rows filled (current class space)
  std::vector<Count> marginal;
  std::vector<Count> pair;

  std::size_t known() const { return attrs.size(); }
  Count marginal_at(ClassIndex y, std::size_t a) const {
    return marginal[y * attrs.size() + a];
  }
  Count pair_at(ClassIndex y, std::size_t a, std::size_t b) const {
    return pair[(y * attrs.size() + a) * attrs.size() + b];
  }
};

class FrequencyStore {
public:
  // BinarySparse when every attribute is binary, General otherwise.
  static StoreBackend choose_backend(const AttributeSchema& schema);
  static std::unique_ptr<FrequencyStore> create(AttributeSchema schema,
                                                StoreBackend backend);

  virtual ~FrequencyStore() = default;

  const AttributeSchema& schema() const { return schema_; }
  virtual StoreBackend backend() const = 0;

  // ---- logical counters ----------------------------------------------------

  Count total() const { return count_; }
  // Number of class rows seen so far (class indices are dense, 0-based).
  ClassIndex class_space() const {
    return static_cast<ClassIndex>(c_counts_.size());
  }
  Count class_count(ClassIndex y) const {
    return y < c_counts_.size() ? c_counts_[y] : 0;
  }
  Count season_count(SeasonValue t) const;
  Count class_season_count(ClassIndex y, SeasonValue t) const;
  // Instances whose season was known (== sum of t_counts).
  Count seasoned_total() const { return seasoned_; }
  // Class-y instances whose season was known (== sum_t ct_counts[y][t]).
  Count class_seasoned_count(ClassIndex y) const {
    return y < cs_counts_.size() ? cs_counts_[y] : 0;
  }

  virtual Count attr_known_count(AttrIndex i) const = 0;
  virtual Count attr_value_count(AttrIndex i, AttrValue v) const = 0;
  virtual Count joint_count(ClassIndex y, SeasonValue t, AttrIndex i,
                            AttrValue vi, AttrIndex j, AttrValue vj) const = 0;
  Count marginal_count(ClassIndex y, SeasonValue t, AttrIndex i,
                       AttrValue v) const {
    return joint_count(y, t, i, v, i, v);
  }
  // Season-blind views used by naive-Bayes scoring:
  //   sum over t of the (y,t,i,v) marginal, and its sum over v.
  virtual Count class_attr_value_count(ClassIndex y, AttrIndex i,
                                       AttrValue v) const = 0;
  virtual Count class_attr_known_count(ClassIndex y, AttrIndex i) const = 0;

  // True when value v of attribute i has been seen at least m times
  // (av_counts[i][v] >= m), the parent filter of the one-dependence models.
  bool parent_eligible(AttrIndex i, AttrValue v, Count m) const {
    return attr_value_count(i, v) >= m;
  }

  // ---- mutation --------------------------------------------------------

  // Validates x against the schema and then applies the counting pass for
  // class y. A SchemaError leaves the store untouched.
  void update(const Instance& x, ClassIndex y);

  // ---- bulk read for scoring ---------------------------------------------

  // Fills `out` with every marginal and pair count the scoring rules need for
  // instance x at season t. `out` is caller-owned scratch and fully
  // overwritten.
  virtual void gather(const Instance& x, SeasonValue t,
                      QueryCounts& out) const = 0;

  // The known attributes of x under this backend's semantics (all attributes
  // for binary-sparse where absent means 0, the explicit entries for
  // general), with their observed values.
  virtual void known_values(const Instance& x, std::vector<AttrIndex>& attrs,
                            std::vector<AttrValue>& vals) const = 0;

  // ---- lifecycle -----------------------------------------------------------

  virtual std::unique_ptr<FrequencyStore> clone() const = 0;
  // Immutable deep copy, safe to read from many threads while the live store
  // keeps training.
  std::shared_ptr<const FrequencyStore> snapshot() const { return clone(); }

  // Store file = header(FileKind::Store) + one STOR section.
  void save(std::ostream& out) const;
  static std::unique_ptr<FrequencyStore> load(std::istream& in);
  // STOR section payload, reused verbatim inside model files. Sparse tables
  // are emitted in sorted key order, so equal logical contents serialize to
  // equal bytes.
  std::string serialize_payload() const;
  static std::unique_ptr<FrequencyStore> from_payload(const std::string& payload);

  const UpdateStats& stats() const { return stats_; }

protected:
  explicit FrequencyStore(AttributeSchema schema);

  // Backend hook: add the attribute/pair statistics of one validated instance
  // whose season t is known.
  virtual void add_attribute_counts(const Instance& x, ClassIndex y,
                                    SeasonValue t) = 0;
  virtual void save_backend(BinaryWriter& w) const = 0;
  virtual void load_backend(PayloadReader& r) = 0;

  void ensure_class(ClassIndex y);
  void bump(Count& cell) {
    ++cell;
    ++stats_.increments;
  }

  AttributeSchema schema_;
  Count count_ = 0;
  Count seasoned_ = 0;
  std::vector<Count> c_counts_;   // per class
  std::vector<Count> t_counts_;   // per season, size T
  std::vector<Count> ct_counts_;  // [y * T + t]
  std::vector<Count> cs_counts_;  // per class, season-known subtotal
  UpdateStats stats_;

private:
  void save_common(BinaryWriter& w) const;
  void load_common(PayloadReader& r);
};

}  // namespace sode
