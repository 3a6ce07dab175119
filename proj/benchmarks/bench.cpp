// Micro-benchmarks: frequency-store update cost (both backends, varying
// schema width and density) and per-instance scoring cost of the three core
// decision rules.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "sode/class_catalog.hpp"
#include "sode/classifier.hpp"
#include "sode/frequency_store.hpp"
#include "sode/schema.hpp"

namespace {

using namespace sode;

// Deterministic batch of sparse binary instances: `present` attributes set to
// 1 out of `n`, season cycling over T = 7, class cycling over 4.
std::vector<Instance> binary_batch(std::size_t n, std::size_t present,
                                   std::size_t count) {
  std::mt19937_64 eng(42);
  std::vector<AttrIndex> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<AttrIndex>(i);
  std::vector<Instance> batch(count);
  for (std::size_t b = 0; b < count; ++b) {
    for (std::size_t i = 0; i < present; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(pool[i], pool[pick(eng)]);
    }
    Instance& x = batch[b];
    for (std::size_t i = 0; i < present; ++i) x.values.emplace_back(pool[i], 1);
    std::sort(x.values.begin(), x.values.end());
    x.season = static_cast<SeasonValue>(b % 7);
  }
  return batch;
}

void BM_StoreUpdate(benchmark::State& state, StoreBackend backend) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto present = static_cast<std::size_t>(state.range(1));
  const auto batch = binary_batch(n, present, 512);
  AttributeSchema schema = AttributeSchema::binary(static_cast<AttrIndex>(n), 7);
  std::size_t cursor = 0;
  auto store = FrequencyStore::create(schema, backend);
  for (auto _ : state) {
    store->update(batch[cursor], static_cast<ClassIndex>(cursor % 4));
    cursor = (cursor + 1) % batch.size();
    if (cursor == 0) {  // keep the table from growing without bound
      state.PauseTiming();
      store = FrequencyStore::create(schema, backend);
      state.ResumeTiming();
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}

void BM_Classify(benchmark::State& state, ModelKind kind) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t present = static_cast<std::size_t>(state.range(1));
  const auto batch = binary_batch(n, present, 512);

  ModelConfig config;
  config.season = SeasonSpec::column(7);
  Model model(kind, AttributeSchema::binary(static_cast<AttrIndex>(n), 1),
              config);
  ClassCatalog& catalog = *model.catalog_ptr();
  std::vector<ClassIndex> classes;
  for (std::size_t y = 0; y < 4; ++y) {
    LabelId id = catalog.intern_label("L" + std::to_string(y));
    classes.push_back(catalog.intern_class({id}));
  }
  for (std::size_t b = 0; b < batch.size(); ++b)
    model.train(batch[b], classes[b % classes.size()]);

  std::size_t cursor = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.score(batch[cursor]));
    cursor = (cursor + 1) % batch.size();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_StoreUpdate, binary_sparse, StoreBackend::BinarySparse)
    ->Args({100, 20})
    ->Args({1000, 20})
    ->Args({10000, 20})
    ->Args({1000, 50});
BENCHMARK_CAPTURE(BM_StoreUpdate, general, StoreBackend::General)
    ->Args({100, 20})
    ->Args({1000, 20});
BENCHMARK_CAPTURE(BM_Classify, nb, ModelKind::Nb)->Args({1000, 20});
BENCHMARK_CAPTURE(BM_Classify, aode, ModelKind::Aode)->Args({1000, 20});
BENCHMARK_CAPTURE(BM_Classify, saode, ModelKind::Saode)->Args({1000, 20});

BENCHMARK_MAIN();
