#include <sstream>

#include "sode/binary_io.hpp"
#include "sode/classifier.hpp"
#include "sode/errors.hpp"

namespace sode {

namespace {

// Section tags inside a model file.
constexpr const char* kConfigTag = "MCFG";
constexpr const char* kCatalogTag = "CTLG";
constexpr const char* kStoreTag = "STOR";

std::string config_payload(ClassifierKind kind, const ModelConfig& config,
                           const std::string& name, std::uint32_t store_count) {
  std::ostringstream buf;
  BinaryWriter w(buf);
  w.u8(static_cast<std::uint8_t>(kind));
  w.str(name);
  w.u64(config.min_parent_count);
  w.f64(config.alpha);
  w.u8(static_cast<std::uint8_t>(config.season.kind));
  w.u32(config.season.cardinality);
  w.u8(static_cast<std::uint8_t>(config.backend));
  w.u32(store_count);
  return buf.str();
}

std::string catalog_payload(const ClassCatalog& catalog) {
  std::ostringstream buf;
  BinaryWriter w(buf);
  catalog.save(w);
  return buf.str();
}

ModelKind inner_kind_of(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::Nb:
    case ClassifierKind::NbSeasonFeature:
    case ClassifierKind::NbPerSeason:
      return ModelKind::Nb;
    case ClassifierKind::Aode:
    case ClassifierKind::AodeSeasonFeature:
    case ClassifierKind::AodePerSeason:
      return ModelKind::Aode;
    case ClassifierKind::Saode:
      return ModelKind::Saode;
  }
  throw DecodeError("unknown classifier kind in model file");
}

}  // namespace

void save_classifier(const StreamClassifier& classifier, std::ostream& out) {
  ClassifierKind kind;
  const ModelConfig* config = nullptr;
  std::vector<const FrequencyStore*> stores;
  if (auto* m = dynamic_cast<const Model*>(&classifier)) {
    kind = static_cast<ClassifierKind>(m->kind());
    config = &m->config();
    stores.push_back(&m->store());
  } else if (auto* sf = dynamic_cast<const SeasonFeatureModel*>(&classifier)) {
    kind = sf->inner().kind() == ModelKind::Nb ? ClassifierKind::NbSeasonFeature
                                               : ClassifierKind::AodeSeasonFeature;
    config = &sf->inner().config();
    stores.push_back(&sf->inner().store());
  } else if (auto* ps = dynamic_cast<const PerSeasonEnsemble*>(&classifier)) {
    kind = ps->cell(0).kind() == ModelKind::Nb ? ClassifierKind::NbPerSeason
                                               : ClassifierKind::AodePerSeason;
    config = &ps->cell(0).config();
    for (SeasonValue t = 0; t < ps->cells(); ++t)
      stores.push_back(&ps->cell(t).store());
  } else {
    throw Error("cannot serialize unknown classifier type");
  }

  BinaryWriter w(out);
  w.header(FileKind::Model);
  w.section(kConfigTag,
            config_payload(kind, *config, classifier.name(),
                           static_cast<std::uint32_t>(stores.size())));
  w.section(kCatalogTag, catalog_payload(classifier.catalog()));
  for (const FrequencyStore* store : stores)
    w.section(kStoreTag, store->serialize_payload());
  if (!out) throw Error("failed writing model file");
}

std::unique_ptr<StreamClassifier> load_classifier(std::istream& in) {
  BinaryReader r(in);
  if (r.header() != FileKind::Model)
    throw DecodeError("not a model file (found a store file)");

  bool have_config = false;
  ClassifierKind kind = ClassifierKind::Nb;
  ModelConfig config;
  std::string name;
  std::uint32_t store_count = 0;
  std::shared_ptr<ClassCatalog> catalog;
  std::vector<std::unique_ptr<FrequencyStore>> stores;

  std::string tag, payload;
  while (r.next_section(tag, payload)) {
    if (tag == kConfigTag) {
      if (have_config) throw DecodeError("duplicate model-config section");
      PayloadReader p(payload);
      const std::uint8_t raw_kind = p.u8();
      if (raw_kind > static_cast<std::uint8_t>(ClassifierKind::AodePerSeason))
        throw DecodeError("unknown classifier kind in model file");
      kind = static_cast<ClassifierKind>(raw_kind);
      name = p.str();
      config.min_parent_count = p.u64();
      config.alpha = p.f64();
      const std::uint8_t raw_season = p.u8();
      if (raw_season > static_cast<std::uint8_t>(SeasonSpec::Kind::Column))
        throw DecodeError("unknown season kind in model file");
      config.season.kind = static_cast<SeasonSpec::Kind>(raw_season);
      config.season.cardinality = p.u32();
      const std::uint8_t raw_backend = p.u8();
      if (raw_backend > static_cast<std::uint8_t>(BackendChoice::General))
        throw DecodeError("unknown backend choice in model file");
      config.backend = static_cast<BackendChoice>(raw_backend);
      store_count = p.u32();
      p.expect_done("model-config section");
      if (!(config.alpha > 0.0))
        throw DecodeError("model file carries a non-positive alpha");
      if (config.season.cardinality < 1)
        throw DecodeError("model file carries season cardinality 0");
      have_config = true;
    } else if (tag == kCatalogTag) {
      if (catalog) throw DecodeError("duplicate catalog section");
      PayloadReader p(payload);
      catalog = std::make_shared<ClassCatalog>(ClassCatalog::load(p));
      p.expect_done("catalog section");
    } else if (tag == kStoreTag) {
      stores.push_back(FrequencyStore::from_payload(payload));
    }
    // Unknown tags are skipped so the format can grow.
  }

  if (!have_config) throw DecodeError("model file has no config section");
  if (!catalog) throw DecodeError("model file has no catalog section");
  if (stores.size() != store_count)
    throw DecodeError("model file store count mismatch: expected " +
                      std::to_string(store_count) + ", found " +
                      std::to_string(stores.size()));
  if (stores.empty()) throw DecodeError("model file has no store section");

  const ModelKind inner = inner_kind_of(kind);
  switch (kind) {
    case ClassifierKind::Nb:
    case ClassifierKind::Aode:
    case ClassifierKind::Saode:
      if (stores.size() != 1)
        throw DecodeError("single-store model file carries several stores");
      return Model::restore(inner, config, std::move(catalog),
                            std::move(stores[0]), std::move(name));
    case ClassifierKind::NbSeasonFeature:
    case ClassifierKind::AodeSeasonFeature:
      if (stores.size() != 1)
        throw DecodeError("single-store model file carries several stores");
      return SeasonFeatureModel::restore(inner, config, std::move(catalog),
                                         std::move(stores[0]), std::move(name));
    case ClassifierKind::NbPerSeason:
    case ClassifierKind::AodePerSeason:
      return PerSeasonEnsemble::restore(inner, config, std::move(catalog),
                                        std::move(stores), std::move(name));
  }
  throw DecodeError("unknown classifier kind in model file");
}

}  // namespace sode
