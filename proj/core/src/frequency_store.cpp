#include "sode/frequency_store.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "sode/binary_io.hpp"
#include "sode/errors.hpp"

namespace sode {

namespace {

constexpr ClassIndex kMaxClassIndex = (1u << 20) - 1;

// (y,t,i,j) packed as y:20 t:12 i:16 j:16. The schema limits enforced in
// create() keep every field in range.
inline std::uint64_t pack_ytij(ClassIndex y, SeasonValue t, AttrIndex i,
                               AttrIndex j) {
  return (static_cast<std::uint64_t>(y) << 44) |
         (static_cast<std::uint64_t>(t) << 32) |
         (static_cast<std::uint64_t>(i) << 16) | j;
}

// (i,vi,j,vj) packed as four 16-bit fields.
inline std::uint64_t pack_ivjv(AttrIndex i, AttrValue vi, AttrIndex j,
                               AttrValue vj) {
  return (static_cast<std::uint64_t>(i) << 48) |
         (static_cast<std::uint64_t>(vi) << 32) |
         (static_cast<std::uint64_t>(j) << 16) | vj;
}

struct U64Hash {
  std::size_t operator()(std::uint64_t x) const noexcept {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

using CountMap = std::unordered_map<std::uint64_t, Count, U64Hash>;

inline Count lookup(const CountMap& m, std::uint64_t key) {
  auto it = m.find(key);
  return it == m.end() ? 0 : it->second;
}

std::vector<std::uint64_t> sorted_keys(const CountMap& m) {
  std::vector<std::uint64_t> keys;
  keys.reserve(m.size());
  for (const auto& [k, v] : m) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

// ---- base ---------------------------------------------------------------

FrequencyStore::FrequencyStore(AttributeSchema schema)
    : schema_(std::move(schema)) {
  t_counts_.assign(schema_.season_cardinality, 0);
}

Count FrequencyStore::season_count(SeasonValue t) const {
  if (t >= schema_.season_cardinality)
    throw SchemaError("season " + std::to_string(t) + " out of range");
  return t_counts_[t];
}

Count FrequencyStore::class_season_count(ClassIndex y, SeasonValue t) const {
  if (t >= schema_.season_cardinality)
    throw SchemaError("season " + std::to_string(t) + " out of range");
  if (y >= class_space()) return 0;
  return ct_counts_[static_cast<std::size_t>(y) * schema_.season_cardinality + t];
}

void FrequencyStore::ensure_class(ClassIndex y) {
  if (y < c_counts_.size()) return;
  c_counts_.resize(y + 1, 0);
  cs_counts_.resize(y + 1, 0);
  ct_counts_.resize(static_cast<std::size_t>(y + 1) * schema_.season_cardinality, 0);
}

void FrequencyStore::update(const Instance& x, ClassIndex y) {
  // Validate everything up front: a rejected instance must not leave partial
  // counts behind.
  if (y > kMaxClassIndex)
    throw SchemaError("class index " + std::to_string(y) + " too large");
  if (x.season && *x.season >= schema_.season_cardinality)
    throw SchemaError("season " + std::to_string(*x.season) + " out of range (T=" +
                      std::to_string(schema_.season_cardinality) + ")");
  const AttrIndex n = schema_.attribute_count();
  AttrIndex prev = 0;
  bool first = true;
  for (const auto& [i, v] : x.values) {
    if (i >= n)
      throw SchemaError("attribute index " + std::to_string(i) +
                        " out of range (n=" + std::to_string(n) + ")");
    if (!first && i <= prev)
      throw SchemaError("instance values must be sorted by attribute index");
    if (v >= schema_.cardinalities[i])
      throw SchemaError("value " + std::to_string(v) + " out of range for attribute " +
                        std::to_string(i));
    prev = i;
    first = false;
  }

  assert(count_ < ~Count{0} && "64-bit counter overflow");
  ensure_class(y);
  bump(count_);
  bump(c_counts_[y]);
  if (x.season) {
    const SeasonValue t = *x.season;
    bump(t_counts_[t]);
    bump(ct_counts_[static_cast<std::size_t>(y) * schema_.season_cardinality + t]);
    bump(seasoned_);
    bump(cs_counts_[y]);
    add_attribute_counts(x, y, t);
  }
  ++stats_.updates;
}

void FrequencyStore::save(std::ostream& out) const {
  BinaryWriter w(out);
  w.header(FileKind::Store);
  w.section("STOR", serialize_payload());
}

std::string FrequencyStore::serialize_payload() const {
  std::ostringstream os(std::ios::binary);
  BinaryWriter w(os);
  w.u8(static_cast<std::uint8_t>(backend()));
  save_common(w);
  save_backend(w);
  return os.str();
}

void FrequencyStore::save_common(BinaryWriter& w) const {
  const AttrIndex n = schema_.attribute_count();
  w.u32(n);
  w.u32(schema_.season_cardinality);
  for (AttrValue c : schema_.cardinalities) w.u32(c);
  w.u64(count_);
  w.u32(class_space());
  for (Count c : c_counts_) w.u64(c);
  for (Count c : t_counts_) w.u64(c);
  for (Count c : ct_counts_) w.u64(c);
}

void FrequencyStore::load_common(PayloadReader& r) {
  count_ = r.u64();
  ClassIndex k = r.u32();
  ensure_class(k == 0 ? 0 : k - 1);
  if (k == 0) {
    c_counts_.clear();
    cs_counts_.clear();
    ct_counts_.clear();
  }
  for (ClassIndex y = 0; y < k; ++y) c_counts_[y] = r.u64();
  for (SeasonValue t = 0; t < schema_.season_cardinality; ++t)
    t_counts_[t] = r.u64();
  for (std::size_t i = 0; i < ct_counts_.size(); ++i) ct_counts_[i] = r.u64();
  // Re-derive the season-known subtotals.
  seasoned_ = 0;
  for (Count c : t_counts_) seasoned_ += c;
  const SeasonValue T = schema_.season_cardinality;
  for (ClassIndex y = 0; y < k; ++y) {
    Count s = 0;
    for (SeasonValue t = 0; t < T; ++t)
      s += ct_counts_[static_cast<std::size_t>(y) * T + t];
    cs_counts_[y] = s;
  }
}

std::unique_ptr<FrequencyStore> FrequencyStore::load(std::istream& in) {
  BinaryReader r(in);
  if (r.header() != FileKind::Store)
    throw DecodeError("not a store file");
  std::unique_ptr<FrequencyStore> store;
  std::string tag, payload;
  while (r.next_section(tag, payload)) {
    if (tag == "STOR") {
      if (store) throw DecodeError("duplicate STOR section");
      store = from_payload(payload);
    }
    // Unrecognized sections are skipped for forward compatibility.
  }
  if (!store) throw DecodeError("missing STOR section");
  return store;
}

// ---- binary-sparse backend ---------------------------------------------

// Fully observed binary data. Physical state: per-attribute present counts
// (over season-known instances), per-(class, attribute) present counts,
// per-(class, season, attribute) present marginals, and present/present pair
// counts keyed (y,t,i<j). Everything else is derived:
//   f[y][t][i][1][j][1] = pair(y,t,i,j)
//   f[y][t][i][1][j][0] = marg(y,t,i) - pair(y,t,i,j)
//   f[y][t][i][0][j][0] = ct[y][t] - marg(y,t,i) - marg(y,t,j) + pair(y,t,i,j)
class BinaryStore final : public FrequencyStore {
public:
  explicit BinaryStore(AttributeSchema schema)
      : FrequencyStore(std::move(schema)) {
    ones_.assign(schema_.attribute_count(), 0);
  }

  StoreBackend backend() const override { return StoreBackend::BinarySparse; }

  Count attr_known_count(AttrIndex i) const override {
    check_attr(i);
    return seasoned_;
  }

  Count attr_value_count(AttrIndex i, AttrValue v) const override {
    check_attr(i);
    check_value(i, v);
    return v == 1 ? ones_[i] : seasoned_ - ones_[i];
  }

  Count joint_count(ClassIndex y, SeasonValue t, AttrIndex i, AttrValue vi,
                    AttrIndex j, AttrValue vj) const override {
    check_attr(i);
    check_attr(j);
    check_value(i, vi);
    check_value(j, vj);
    if (t >= schema_.season_cardinality)
      throw SchemaError("season " + std::to_string(t) + " out of range");
    if (y >= class_space()) return 0;
    if (i == j) {
      if (vi != vj) return 0;
      const Count m = marg(y, t, i);
      return vi == 1 ? m : class_season_count(y, t) - m;
    }
    const AttrIndex a = std::min(i, j), b = std::max(i, j);
    const Count p11 = lookup(pair_, pack_ytij(y, t, a, b));
    if (vi == 1 && vj == 1) return p11;
    if (vi == 1) return marg(y, t, i) - p11;
    if (vj == 1) return marg(y, t, j) - p11;
    return class_season_count(y, t) - marg(y, t, i) - marg(y, t, j) + p11;
  }

  Count class_attr_value_count(ClassIndex y, AttrIndex i,
                               AttrValue v) const override {
    check_attr(i);
    check_value(i, v);
    // class_ones_ only grows on season-known updates, so it can lag behind
    // class_space() when a class has only been seen without a season.
    const Count present = y < class_ones_.size() ? class_ones_[y][i] : 0;
    return v == 1 ? present : class_seasoned_count(y) - present;
  }

  Count class_attr_known_count(ClassIndex y, AttrIndex i) const override {
    check_attr(i);
    return class_seasoned_count(y);
  }

  void gather(const Instance& x, SeasonValue t, QueryCounts& out) const override {
    if (t >= schema_.season_cardinality)
      throw SchemaError("season " + std::to_string(t) + " out of range");
    const AttrIndex n = schema_.attribute_count();
    const ClassIndex k = class_space();
    out.attrs.resize(n);
    out.vals.assign(n, 0);
    for (AttrIndex i = 0; i < n; ++i) out.attrs[i] = i;
    for (const auto& [i, v] : x.values) {
      check_attr(i);
      check_value(i, v);
      out.vals[i] = v;
    }
    out.classes = k;
    out.marginal.assign(static_cast<std::size_t>(k) * n, 0);
    out.pair.assign(static_cast<std::size_t>(k) * n * n, 0);
    scratch_m1_.resize(n);
    for (ClassIndex y = 0; y < k; ++y) {
      const Count ct = class_season_count(y, t);
      Count* row = out.marginal.data() + static_cast<std::size_t>(y) * n;
      for (AttrIndex i = 0; i < n; ++i) {
        scratch_m1_[i] = marg(y, t, i);
        row[i] = out.vals[i] == 1 ? scratch_m1_[i] : ct - scratch_m1_[i];
      }
      Count* grid = out.pair.data() + static_cast<std::size_t>(y) * n * n;
      for (AttrIndex a = 0; a < n; ++a) {
        grid[static_cast<std::size_t>(a) * n + a] = row[a];
        for (AttrIndex b = a + 1; b < n; ++b) {
          const Count p11 = lookup(pair_, pack_ytij(y, t, a, b));
          Count v;
          if (out.vals[a] == 1 && out.vals[b] == 1)
            v = p11;
          else if (out.vals[a] == 1)
            v = scratch_m1_[a] - p11;
          else if (out.vals[b] == 1)
            v = scratch_m1_[b] - p11;
          else
            v = ct - scratch_m1_[a] - scratch_m1_[b] + p11;
          grid[static_cast<std::size_t>(a) * n + b] = v;
          grid[static_cast<std::size_t>(b) * n + a] = v;
        }
      }
    }
  }

  void known_values(const Instance& x, std::vector<AttrIndex>& attrs,
                    std::vector<AttrValue>& vals) const override {
    const AttrIndex n = schema_.attribute_count();
    attrs.resize(n);
    vals.assign(n, 0);
    for (AttrIndex i = 0; i < n; ++i) attrs[i] = i;
    for (const auto& [i, v] : x.values) {
      check_attr(i);
      check_value(i, v);
      vals[i] = v;
    }
  }

  std::unique_ptr<FrequencyStore> clone() const override {
    return std::make_unique<BinaryStore>(*this);
  }

protected:
  void add_attribute_counts(const Instance& x, ClassIndex y,
                            SeasonValue t) override {
    while (class_ones_.size() < class_space())
      class_ones_.emplace_back(schema_.attribute_count(), 0);
    present_.clear();
    for (const auto& [i, v] : x.values)
      if (v == 1) present_.push_back(i);
    for (AttrIndex i : present_) {
      bump(ones_[i]);
      bump(class_ones_[y][i]);
      bump(marg_[pack_ytij(y, t, i, i)]);
    }
    for (std::size_t a = 0; a < present_.size(); ++a)
      for (std::size_t b = a + 1; b < present_.size(); ++b)
        bump(pair_[pack_ytij(y, t, present_[a], present_[b])]);
  }

  void save_backend(BinaryWriter& w) const override {
    for (Count c : ones_) w.u64(c);
    auto mkeys = sorted_keys(marg_);
    w.u64(mkeys.size());
    for (std::uint64_t key : mkeys) {
      w.u32(static_cast<std::uint32_t>(key >> 44));           // y
      w.u32(static_cast<std::uint32_t>((key >> 32) & 0xfff)); // t
      w.u32(static_cast<std::uint32_t>((key >> 16) & 0xffff)); // i
      w.u64(marg_.at(key));
    }
    auto pkeys = sorted_keys(pair_);
    w.u64(pkeys.size());
    for (std::uint64_t key : pkeys) {
      w.u32(static_cast<std::uint32_t>(key >> 44));
      w.u32(static_cast<std::uint32_t>((key >> 32) & 0xfff));
      w.u32(static_cast<std::uint32_t>((key >> 16) & 0xffff));
      w.u32(static_cast<std::uint32_t>(key & 0xffff));         // j
      w.u64(pair_.at(key));
    }
  }

  void load_backend(PayloadReader& r) override {
    const AttrIndex n = schema_.attribute_count();
    ones_.assign(n, 0);
    for (AttrIndex i = 0; i < n; ++i) ones_[i] = r.u64();
    class_ones_.assign(class_space(), std::vector<Count>(n, 0));
    marg_.clear();
    const std::uint64_t mcount = r.u64();
    for (std::uint64_t e = 0; e < mcount; ++e) {
      const ClassIndex y = r.u32();
      const SeasonValue t = r.u32();
      const AttrIndex i = r.u32();
      const Count c = r.u64();
      if (y >= class_space() || t >= schema_.season_cardinality || i >= n)
        throw DecodeError("marginal entry out of range");
      marg_[pack_ytij(y, t, i, i)] = c;
      class_ones_[y][i] += c;
    }
    pair_.clear();
    const std::uint64_t pcount = r.u64();
    for (std::uint64_t e = 0; e < pcount; ++e) {
      const ClassIndex y = r.u32();
      const SeasonValue t = r.u32();
      const AttrIndex i = r.u32();
      const AttrIndex j = r.u32();
      const Count c = r.u64();
      if (y >= class_space() || t >= schema_.season_cardinality || i >= n ||
          j >= n || i >= j)
        throw DecodeError("pair entry out of range");
      pair_[pack_ytij(y, t, i, j)] = c;
    }
  }

private:
  void check_attr(AttrIndex i) const {
    if (i >= schema_.attribute_count())
      throw SchemaError("attribute index " + std::to_string(i) + " out of range");
  }
  void check_value(AttrIndex i, AttrValue v) const {
    if (v >= 2)
      throw SchemaError("value " + std::to_string(v) +
                        " out of range for binary attribute " + std::to_string(i));
  }
  Count marg(ClassIndex y, SeasonValue t, AttrIndex i) const {
    return lookup(marg_, pack_ytij(y, t, i, i));
  }

  std::vector<Count> ones_;                    // present per attribute
  std::vector<std::vector<Count>> class_ones_; // present per (class, attribute)
  CountMap marg_;                              // (y,t,i) -> present count
  CountMap pair_;                              // (y,t,i<j) -> present/present
  mutable std::vector<Count> scratch_m1_;
  std::vector<AttrIndex> present_;
};

// ---- general backend ------------------------------------------------------

// Arbitrary cardinalities, attributes may be unknown. One associative table
// per (class, season) cell keyed by the canonical (i,vi,j,vj) tuple (i <= j);
// the table holds exactly what the counting pass touched.
class GeneralStore final : public FrequencyStore {
public:
  explicit GeneralStore(AttributeSchema schema)
      : FrequencyStore(std::move(schema)) {
    const AttrIndex n = schema_.attribute_count();
    a_counts_.assign(n, 0);
    av_.resize(n);
    for (AttrIndex i = 0; i < n; ++i) av_[i].assign(schema_.cardinalities[i], 0);
  }

  StoreBackend backend() const override { return StoreBackend::General; }

  Count attr_known_count(AttrIndex i) const override {
    check_attr(i);
    return a_counts_[i];
  }

  Count attr_value_count(AttrIndex i, AttrValue v) const override {
    check_attr(i);
    check_value(i, v);
    return av_[i][v];
  }

  Count joint_count(ClassIndex y, SeasonValue t, AttrIndex i, AttrValue vi,
                    AttrIndex j, AttrValue vj) const override {
    check_attr(i);
    check_attr(j);
    check_value(i, vi);
    check_value(j, vj);
    if (t >= schema_.season_cardinality)
      throw SchemaError("season " + std::to_string(t) + " out of range");
    if (y >= class_space()) return 0;
    if (i == j && vi != vj) return 0;
    if (i > j) {
      std::swap(i, j);
      std::swap(vi, vj);
    }
    return lookup(cell(y, t), pack_ivjv(i, vi, j, vj));
  }

  Count class_attr_value_count(ClassIndex y, AttrIndex i,
                               AttrValue v) const override {
    check_attr(i);
    check_value(i, v);
    if (y >= class_space()) return 0;
    Count total = 0;
    const std::uint64_t key = pack_ivjv(i, v, i, v);
    for (SeasonValue t = 0; t < schema_.season_cardinality; ++t)
      total += lookup(cell(y, t), key);
    return total;
  }

  Count class_attr_known_count(ClassIndex y, AttrIndex i) const override {
    check_attr(i);
    if (y >= class_space()) return 0;
    Count total = 0;
    for (AttrValue v = 0; v < schema_.cardinalities[i]; ++v)
      total += class_attr_value_count(y, i, v);
    return total;
  }

  void gather(const Instance& x, SeasonValue t, QueryCounts& out) const override {
    if (t >= schema_.season_cardinality)
      throw SchemaError("season " + std::to_string(t) + " out of range");
    const ClassIndex k = class_space();
    out.attrs.clear();
    out.vals.clear();
    for (const auto& [i, v] : x.values) {
      check_attr(i);
      check_value(i, v);
      out.attrs.push_back(i);
      out.vals.push_back(v);
    }
    const std::size_t K = out.attrs.size();
    out.classes = k;
    out.marginal.assign(static_cast<std::size_t>(k) * K, 0);
    out.pair.assign(static_cast<std::size_t>(k) * K * K, 0);
    for (ClassIndex y = 0; y < k; ++y) {
      const CountMap& c = cell(y, t);
      Count* row = out.marginal.data() + static_cast<std::size_t>(y) * K;
      Count* grid = out.pair.data() + static_cast<std::size_t>(y) * K * K;
      for (std::size_t a = 0; a < K; ++a) {
        row[a] = lookup(c, pack_ivjv(out.attrs[a], out.vals[a], out.attrs[a],
                                     out.vals[a]));
        grid[a * K + a] = row[a];
        for (std::size_t b = a + 1; b < K; ++b) {
          const Count v = lookup(c, pack_ivjv(out.attrs[a], out.vals[a],
                                              out.attrs[b], out.vals[b]));
          grid[a * K + b] = v;
          grid[b * K + a] = v;
        }
      }
    }
  }

  void known_values(const Instance& x, std::vector<AttrIndex>& attrs,
                    std::vector<AttrValue>& vals) const override {
    attrs.clear();
    vals.clear();
    for (const auto& [i, v] : x.values) {
      check_attr(i);
      check_value(i, v);
      attrs.push_back(i);
      vals.push_back(v);
    }
  }

  std::unique_ptr<FrequencyStore> clone() const override {
    return std::make_unique<GeneralStore>(*this);
  }

protected:
  void add_attribute_counts(const Instance& x, ClassIndex y,
                            SeasonValue t) override {
    cells_.resize(static_cast<std::size_t>(class_space()) *
                  schema_.season_cardinality);
    CountMap& c = cells_[static_cast<std::size_t>(y) * schema_.season_cardinality + t];
    const auto& vals = x.values;
    for (std::size_t a = 0; a < vals.size(); ++a) {
      bump(a_counts_[vals[a].first]);
      bump(av_[vals[a].first][vals[a].second]);
      for (std::size_t b = a; b < vals.size(); ++b)
        bump(c[pack_ivjv(vals[a].first, vals[a].second, vals[b].first,
                         vals[b].second)]);
    }
  }

  void save_backend(BinaryWriter& w) const override {
    for (Count c : a_counts_) w.u64(c);
    for (const auto& row : av_)
      for (Count c : row) w.u64(c);
    std::uint64_t entries = 0;
    for (const auto& c : cells_) entries += c.size();
    w.u64(entries);
    const SeasonValue T = schema_.season_cardinality;
    for (std::size_t cellIdx = 0; cellIdx < cells_.size(); ++cellIdx) {
      const ClassIndex y = static_cast<ClassIndex>(cellIdx / T);
      const SeasonValue t = static_cast<SeasonValue>(cellIdx % T);
      for (std::uint64_t key : sorted_keys(cells_[cellIdx])) {
        w.u32(y);
        w.u32(t);
        w.u32(static_cast<std::uint32_t>(key >> 48));           // i
        w.u32(static_cast<std::uint32_t>((key >> 32) & 0xffff)); // vi
        w.u32(static_cast<std::uint32_t>((key >> 16) & 0xffff)); // j
        w.u32(static_cast<std::uint32_t>(key & 0xffff));         // vj
        w.u64(cells_[cellIdx].at(key));
      }
    }
  }

  void load_backend(PayloadReader& r) override {
    const AttrIndex n = schema_.attribute_count();
    for (AttrIndex i = 0; i < n; ++i) a_counts_[i] = r.u64();
    for (AttrIndex i = 0; i < n; ++i)
      for (AttrValue v = 0; v < schema_.cardinalities[i]; ++v)
        av_[i][v] = r.u64();
    cells_.assign(static_cast<std::size_t>(class_space()) *
                      schema_.season_cardinality,
                  CountMap{});
    const std::uint64_t entries = r.u64();
    for (std::uint64_t e = 0; e < entries; ++e) {
      const ClassIndex y = r.u32();
      const SeasonValue t = r.u32();
      const AttrIndex i = r.u32();
      const AttrValue vi = r.u32();
      const AttrIndex j = r.u32();
      const AttrValue vj = r.u32();
      const Count c = r.u64();
      if (y >= class_space() || t >= schema_.season_cardinality || i > j ||
          j >= n || vi >= schema_.cardinalities[i] || vj >= schema_.cardinalities[j] ||
          (i == j && vi != vj))
        throw DecodeError("joint entry out of range");
      cells_[static_cast<std::size_t>(y) * schema_.season_cardinality + t]
            [pack_ivjv(i, vi, j, vj)] = c;
    }
  }

private:
  void check_attr(AttrIndex i) const {
    if (i >= schema_.attribute_count())
      throw SchemaError("attribute index " + std::to_string(i) + " out of range");
  }
  void check_value(AttrIndex i, AttrValue v) const {
    if (v >= schema_.cardinalities[i])
      throw SchemaError("value " + std::to_string(v) +
                        " out of range for attribute " + std::to_string(i));
  }
  const CountMap& cell(ClassIndex y, SeasonValue t) const {
    static const CountMap empty;
    const std::size_t idx =
        static_cast<std::size_t>(y) * schema_.season_cardinality + t;
    return idx < cells_.size() ? cells_[idx] : empty;
  }

  std::vector<Count> a_counts_;
  std::vector<std::vector<Count>> av_;
  std::vector<CountMap> cells_;  // [y * T + t]
};

// ---- factory / deserialization ----------------------------------------------

StoreBackend FrequencyStore::choose_backend(const AttributeSchema& schema) {
  return schema.all_binary() ? StoreBackend::BinarySparse : StoreBackend::General;
}

std::unique_ptr<FrequencyStore> FrequencyStore::create(AttributeSchema schema,
                                                       StoreBackend backend) {
  schema.validate();
  if (schema.attribute_count() > 65535)
    throw SchemaError("too many attributes (limit 65535)");
  if (schema.season_cardinality > 4095)
    throw SchemaError("too many seasons (limit 4095)");
  for (AttrValue c : schema.cardinalities)
    if (c > 65535) throw SchemaError("cardinality too large (limit 65535)");
  switch (backend) {
    case StoreBackend::BinarySparse:
      if (!schema.all_binary())
        throw SchemaError("binary-sparse backend requires binary attributes");
      return std::make_unique<BinaryStore>(std::move(schema));
    case StoreBackend::General:
      return std::make_unique<GeneralStore>(std::move(schema));
  }
  throw SchemaError("unknown store backend");
}

std::unique_ptr<FrequencyStore> FrequencyStore::from_payload(
    const std::string& payload) {
  PayloadReader r(payload);
  const std::uint8_t backend = r.u8();
  if (backend > static_cast<std::uint8_t>(StoreBackend::General))
    throw DecodeError("unknown store backend " + std::to_string(backend));
  AttributeSchema schema;
  const AttrIndex n = r.u32();
  schema.season_cardinality = r.u32();
  schema.cardinalities.resize(n);
  for (AttrIndex i = 0; i < n; ++i) schema.cardinalities[i] = r.u32();
  std::unique_ptr<FrequencyStore> store;
  try {
    store = create(std::move(schema), static_cast<StoreBackend>(backend));
  } catch (const SchemaError& e) {
    throw DecodeError(std::string("invalid serialized schema: ") + e.what());
  }
  store->load_common(r);
  store->load_backend(r);
  r.expect_done("STOR");
  return store;
}

}  // namespace sode
