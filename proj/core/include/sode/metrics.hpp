#pragma once

// The five evaluation measures over a sequence of prediction records, for a
// multi-label task where each record carries a predicted label set H, a true
// label set Y and per-label probabilities λ:
//
//   ap    100 · (exact H = Y matches) / N
//   hl    mean |H △ Y| / |L|            (symmetric-difference share)
//   mla   mean |H ∩ Y| / |H ∪ Y|        (Jaccard; empty/empty counts 1)
//   mlfs  mean 2|H ∩ Y| / (|H| + |Y|)   (F-score; empty/empty counts 1)
//   rmse  sqrt( Σ_d Σ_{l ∈ L} (λ_{d,l} − [l ∈ Y_d])² / (N·|L|) )
//
// The ledger accumulates only |L|-independent sums, so the label universe is
// passed at read time (it may still be growing while a stream runs) and
// windowed, per-season and overall ledgers over the same records agree
// exactly. Merging ledgers is associative and equals accumulating their
// records in any order.

#include <cstddef>

#include "sode/classifier.hpp"
#include "sode/schema.hpp"

namespace sode {

class EvaluationLedger {
public:
  void add(const PredictionRecord& rec);
  void merge(const EvaluationLedger& other);

  Count records() const { return n_; }
  Count exact_matches() const { return exact_; }

  // Throw Error when undefined (no records; hl/rmse also need |L| >= 1).
  double ap() const;
  double hl(std::size_t label_count) const;
  double mla() const;
  double mlfs() const;
  double rmse(std::size_t label_count) const;

private:
  void require_records() const;

  Count n_ = 0;
  Count exact_ = 0;
  Count sym_diff_ = 0;   // Σ |H △ Y|
  double jaccard_ = 0;   // Σ |H∩Y| / |H∪Y|
  double fscore_ = 0;    // Σ 2|H∩Y| / (|H|+|Y|)
  double sq_err_ = 0;    // Σ_d Σ_l (λ − indicator)², zero cells omitted
};

}  // namespace sode
