#include <doctest.h>

#include "nodal/serialize.hpp"

using nlohmann::json;
using nodal::Target;

namespace {

template <class T, class F>
void check_round_trip(const T& value, F from) {
  const json doc = nodal::to_document(value);
  CHECK(doc.at("schema") == 1);
  const T back = from(json::parse(doc.dump()));
  CHECK(back == value);
  CHECK(nodal::to_document(back).dump() == doc.dump());
}

}  // namespace

TEST_SUITE("serialize") {
  TEST_CASE("log magnitudes, including zero and tiny values") {
    for (const auto& v : {nodal::LogMagnitude::zero(), nodal::LogMagnitude::from_log10(-7129.41),
                          nodal::LogMagnitude::from_double(-2.5)}) {
      const json j = v;
      CHECK(j.get<nodal::LogMagnitude>() == v);
    }
    CHECK(json(nodal::LogMagnitude::zero()).at("log10_abs").is_null());
  }

  TEST_CASE("barrier certificates round-trip") {
    check_round_trip(nodal::mu_lower_bound({Target::mu0, 0.5}), nodal::barrier_from_document);
    check_round_trip(nodal::mu_lower_bound({Target::mu1, 0.5, 0.05}), nodal::barrier_from_document);
  }

  TEST_CASE("symmetrization certificates round-trip") {
    check_round_trip(nodal::symmetrization_run({3.8317}, Target::mu0, nodal::TMode::appendix_formula),
                     nodal::symmetrization_from_document);
    check_round_trip(nodal::symmetrization_run(nodal::limiting_schedule(), Target::mu1, nodal::TMode::prop_formula),
                     nodal::symmetrization_from_document);
    check_round_trip(nodal::symmetrization_bound({4.5}, 0.1, Target::mu0), nodal::symmetrization_from_document);
  }

  TEST_CASE("ensemble statistics round-trip") {
    nodal::EnsembleOptions opt;
    opt.grid = nodal::GridSpec{10, 96, 9};
    opt.n_terms = 30;
    opt.n_samples = 4;
    check_round_trip(nodal::estimate_mu(opt), nodal::ensemble_from_document);
  }

  TEST_CASE("census documents carry their sample metadata") {
    const auto w = nodal::sample_wave(30, 4, 1);
    const auto c = nodal::nodal_census(nodal::evaluate_field(w, nodal::GridSpec{10, 96, 9}));
    const json doc = nodal::to_document(c, w);
    CHECK(nodal::document_kind(doc) == "census");
    CHECK(doc.at("seed") == 4);
    CHECK(doc.at("n_terms") == 30);
    CHECK(doc.at("interior_components").size() == static_cast<std::size_t>(c.n_interior_domains));
  }

  TEST_CASE("schema and kind are enforced") {
    json doc = nodal::to_document(nodal::mu_lower_bound({Target::mu0, 0.5}));
    CHECK_THROWS_AS(nodal::symmetrization_from_document(doc), nodal::SchemaError);
    doc["schema"] = 2;
    CHECK_THROWS_AS(nodal::barrier_from_document(doc), nodal::SchemaError);
    CHECK_THROWS_AS(nodal::document_kind(json::object()), nodal::SchemaError);
  }
}
