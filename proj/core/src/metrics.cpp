#include "sode/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sode/errors.hpp"

namespace sode {

void EvaluationLedger::add(const PredictionRecord& rec) {
  const auto& h = rec.predicted;
  const auto& y = rec.truth;
  std::size_t inter = 0;
  {
    auto hi = h.begin();
    auto yi = y.begin();
    while (hi != h.end() && yi != y.end()) {
      if (*hi < *yi)
        ++hi;
      else if (*yi < *hi)
        ++yi;
      else {
        ++inter;
        ++hi;
        ++yi;
      }
    }
  }
  const std::size_t uni = h.size() + y.size() - inter;
  const std::size_t sym = uni - inter;

  ++n_;
  if (sym == 0) ++exact_;
  sym_diff_ += sym;
  jaccard_ += uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
  fscore_ += h.size() + y.size() == 0
                 ? 1.0
                 : 2.0 * static_cast<double>(inter) / (h.size() + y.size());

  // Squared error over label cells; cells with λ = 0 and l ∉ Y contribute
  // nothing, so walking the two sorted sequences covers every nonzero cell.
  auto li = rec.label_probabilities.begin();
  const auto lend = rec.label_probabilities.end();
  auto yi = y.begin();
  while (li != lend || yi != y.end()) {
    if (yi == y.end() || (li != lend && li->first < *yi)) {
      sq_err_ += li->second * li->second;
      ++li;
    } else if (li == lend || *yi < li->first) {
      sq_err_ += 1.0;
      ++yi;
    } else {
      const double d = li->second - 1.0;
      sq_err_ += d * d;
      ++li;
      ++yi;
    }
  }
}

void EvaluationLedger::merge(const EvaluationLedger& other) {
  n_ += other.n_;
  exact_ += other.exact_;
  sym_diff_ += other.sym_diff_;
  jaccard_ += other.jaccard_;
  fscore_ += other.fscore_;
  sq_err_ += other.sq_err_;
}

void EvaluationLedger::require_records() const {
  if (n_ == 0) throw Error("metric undefined: the ledger holds no records");
}

double EvaluationLedger::ap() const {
  require_records();
  return 100.0 * static_cast<double>(exact_) / static_cast<double>(n_);
}

double EvaluationLedger::hl(std::size_t label_count) const {
  require_records();
  if (label_count == 0) throw Error("metric undefined: empty label universe");
  return static_cast<double>(sym_diff_) /
         (static_cast<double>(n_) * static_cast<double>(label_count));
}

double EvaluationLedger::mla() const {
  require_records();
  return jaccard_ / static_cast<double>(n_);
}

double EvaluationLedger::mlfs() const {
  require_records();
  return fscore_ / static_cast<double>(n_);
}

double EvaluationLedger::rmse(std::size_t label_count) const {
  require_records();
  if (label_count == 0) throw Error("metric undefined: empty label universe");
  return std::sqrt(sq_err_ / (static_cast<double>(n_) *
                              static_cast<double>(label_count)));
}

}  // namespace sode
