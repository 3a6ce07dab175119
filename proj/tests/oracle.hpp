#pragma once
// Test-side reference implementations, kept deliberately naive and separate
// from the library: a dense counter table updated by literal loops, and
// decision-rule scorers that evaluate plain probability products in double
// precision. Library results are checked against these.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "sode/schema.hpp"

namespace oracle {

// Dense counter table. Mirrors the incremental update loop one literal
// statement at a time: total and per-class counts always advance; season,
// attribute, and pair statistics advance only when the season is known.
// The pair table is filled for every ordered pair of known attributes,
// including the diagonal (i == j), so the diagonal doubles as the
// per-attribute joint table.
struct Dense {
  std::size_t n = 0;       // attributes
  std::size_t vmax = 0;    // widest attribute cardinality
  std::size_t k = 0;       // classes
  std::size_t seasons = 1; // season cardinality

  std::vector<std::size_t> cards;

  sode::Count count = 0;
  std::vector<sode::Count> c;   // [k]
  std::vector<sode::Count> t;   // [T]
  std::vector<sode::Count> ct;  // [k][T]
  std::vector<sode::Count> a;   // [n]
  std::vector<sode::Count> av;  // [n][vmax]
  std::vector<sode::Count> f;   // [k][T][n][vmax][n][vmax]

  Dense(const sode::AttributeSchema& schema, std::size_t classes,
        std::size_t season_cardinality)
      : n(schema.attribute_count()), k(classes), seasons(season_cardinality) {
    for (std::size_t i = 0; i < n; ++i) {
      cards.push_back(schema.cardinalities[i]);
      vmax = std::max(vmax, cards.back());
    }
    c.assign(k, 0);
    t.assign(seasons, 0);
    ct.assign(k * seasons, 0);
    a.assign(n, 0);
    av.assign(n * vmax, 0);
    f.assign(k * seasons * n * vmax * n * vmax, 0);
  }

  std::size_t fidx(std::size_t y, std::size_t s, std::size_t i,
                   std::size_t vi, std::size_t j, std::size_t vj) const {
    return ((((y * seasons + s) * n + i) * vmax + vi) * n + j) * vmax + vj;
  }

  // x.values must hold exactly the known attributes, ascending by id.
  void update(const sode::Instance& x, std::size_t y) {
    assert(y < k);
    ++count;
    ++c[y];
    if (!x.season.has_value()) return;
    std::size_t s = *x.season;
    assert(s < seasons);
    ++t[s];
    ++ct[y * seasons + s];
    for (const auto& [i, vi] : x.values) {
      ++a[i];
      ++av[i * vmax + vi];
    }
    for (const auto& [i, vi] : x.values)
      for (const auto& [j, vj] : x.values) ++f[fidx(y, s, i, vi, j, vj)];
  }

  sode::Count joint(std::size_t y, std::size_t s, std::size_t i,
                    std::size_t vi, std::size_t j, std::size_t vj) const {
    return f[fidx(y, s, i, vi, j, vj)];
  }
  // Season-summed single-attribute joint, used by the naive-Bayes scorer.
  sode::Count marg_all_seasons(std::size_t y, std::size_t i,
                               std::size_t vi) const {
    sode::Count total = 0;
    for (std::size_t s = 0; s < seasons; ++s)
      total += joint(y, s, i, vi, i, vi);
    return total;
  }
};

// ---------------------------------------------------------------------------
// Decision-rule scorers. All work in plain double probability space (the
// oracle bounds keep products far from underflow) and return natural logs.

inline std::vector<double> nb_scores(const Dense& d, const sode::Instance& x,
                                     double alpha) {
  std::vector<double> out(d.k);
  for (std::size_t y = 0; y < d.k; ++y) {
    double lp = std::log((static_cast<double>(d.c[y]) + alpha) /
                         (static_cast<double>(d.count) +
                          alpha * static_cast<double>(d.k)));
    for (const auto& [i, v] : x.values) {
      double num = static_cast<double>(d.marg_all_seasons(y, i, v)) + alpha;
      double den = 0;
      for (std::size_t w = 0; w < d.cards[i]; ++w)
        den += static_cast<double>(d.marg_all_seasons(y, i, w));
      den += alpha * static_cast<double>(d.cards[i]);
      lp += std::log(num / den);
    }
    out[y] = lp;
  }
  return out;
}

enum class SumShape {
  FactorsOutside,  // prior and season likelihood multiply the whole sum
  FactorsInside,   // prior and season likelihood sit inside every summand
  NoSeasonTerms,   // plain one-dependence sum (the season-free rule)
};

// Superparent-sum scorer over a known season s. Parents are the known
// attributes whose observed-value count meets the threshold m. Returns
// nullopt when no parent qualifies (callers fall back to naive Bayes).
inline std::optional<std::vector<double>> ode_scores(
    const Dense& d, const sode::Instance& x, std::size_t s, double alpha,
    sode::Count m, SumShape shape) {
  std::vector<std::pair<std::size_t, std::size_t>> parents;
  for (const auto& [i, v] : x.values)
    if (d.av[i * d.vmax + v] >= m) parents.emplace_back(i, v);
  if (parents.empty()) return std::nullopt;

  double kd = static_cast<double>(d.k);
  double td = static_cast<double>(d.seasons);
  std::vector<double> out(d.k);
  for (std::size_t y = 0; y < d.k; ++y) {
    double prior = (static_cast<double>(d.c[y]) + alpha) /
                   (static_cast<double>(d.count) + alpha * kd);
    double season_lik =
        (static_cast<double>(d.ct[y * d.seasons + s]) + alpha) /
        (static_cast<double>(d.c[y]) + alpha * td);
    double sum = 0;
    for (const auto& [i, vi] : parents) {
      sode::Count n4 = d.joint(y, s, i, vi, i, vi);
      double term = (static_cast<double>(n4) + alpha) /
                    (static_cast<double>(d.count) +
                     alpha * kd * td * static_cast<double>(d.cards[i]));
      for (const auto& [j, vj] : x.values) {
        double num = static_cast<double>(d.joint(y, s, i, vi, j, vj)) + alpha;
        double den = static_cast<double>(n4) +
                     alpha * static_cast<double>(d.cards[j]);
        term *= num / den;
      }
      if (shape == SumShape::FactorsInside) term *= prior * season_lik;
      sum += term;
    }
    sum /= static_cast<double>(parents.size());
    if (shape == SumShape::FactorsOutside) sum *= prior * season_lik;
    out[y] = std::log(sum);
  }
  return out;
}

inline std::size_t argmax_lowest(const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t y = 1; y < scores.size(); ++y)
    if (scores[y] > scores[best]) best = y;
  return best;
}

// ---------------------------------------------------------------------------
// Randomized-instance helpers shared by the oracle-equivalence tests.

struct Rand {
  std::mt19937_64 eng;
  explicit Rand(std::uint64_t seed) : eng(seed) {}
  std::size_t below(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(eng);
  }
  double uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng);
  }
  bool chance(double p) { return uniform() < p; }
};

// Instance with every attribute known (what the sparse-binary backend
// requires). Binary schemas only: present attributes carry value 1 and the
// sparse encoding lists just those.
inline sode::Instance dense_binary_instance(Rand& rng, std::size_t n,
                                            std::optional<std::size_t> season,
                                            double present_prob = 0.45) {
  sode::Instance x;
  if (season)
    x.season = static_cast<sode::SeasonValue>(*season);
  for (std::size_t i = 0; i < n; ++i)
    x.values.emplace_back(static_cast<sode::AttrIndex>(i),
                          rng.chance(present_prob) ? 1 : 0);
  return x;
}

// Sparse view of a fully-known binary instance: only the 1-valued entries.
inline sode::Instance sparse_view(const sode::Instance& dense) {
  sode::Instance x;
  x.season = dense.season;
  for (const auto& [i, v] : dense.values)
    if (v != 0) x.values.emplace_back(i, v);
  return x;
}

// Instance over an arbitrary schema where each attribute is known with
// probability know_prob; values uniform over the attribute's range.
inline sode::Instance partial_instance(Rand& rng,
                                       const sode::AttributeSchema& schema,
                                       std::optional<std::size_t> season,
                                       double know_prob = 0.8) {
  sode::Instance x;
  if (season)
    x.season = static_cast<sode::SeasonValue>(*season);
  for (std::size_t i = 0; i < schema.attribute_count(); ++i) {
    if (!rng.chance(know_prob)) continue;
    auto card = schema.cardinalities[i];
    x.values.emplace_back(static_cast<sode::AttrIndex>(i),
                          static_cast<sode::AttrValue>(rng.below(card)));
  }
  return x;
}

}  // namespace oracle
