#include <doctest.h>

#include "oracles.hpp"
#include "qvac/constants.hpp"
#include "qvac/errors.hpp"
#include "qvac/species.hpp"

#include <cmath>
#include <random>

using namespace qvac;

namespace {

const ConstantRegistry& reg() {
  static const ConstantRegistry r = ConstantRegistry::load(default_constants_path());
  return r;
}

const SpeciesTable& sm() {
  static const SpeciesTable t = load_species(default_species_path());
  return t;
}

SpeciesTable electron_only() { return parse_species("electron\t-1\t1\t0.5109989461\n"); }

std::size_t malformed_row(const std::string& text) {
  try {
    parse_species(text);
  } catch (const MalformedRow& e) {
    return e.line();
  }
  FAIL("expected MalformedRow");
  return 0;
}

}  // namespace

TEST_CASE("bundled Standard-Model file") {
  const auto& t = sm();
  REQUIRE(t.size() == 9);
  CHECK(t.rows()[0].name == "electron");
  CHECK(t.rows()[0].charge_ratio == Rational(-1));
  CHECK(t.rows()[3].name == "up");
  CHECK(t.rows()[3].charge_ratio == Rational(2, 3));
  CHECK(t.rows()[3].multiplicity == 3);
  CHECK(t.rows()[6].charge_ratio == Rational(-1, 3));
  CHECK(t.source() == default_species_path().string());
  CHECK(t.checksum() != 0);
  CHECK(load_species(default_species_path()).checksum() == t.checksum());
}

TEST_CASE("species masses") {
  const auto m = species_mass(sm().rows()[0], reg());
  REQUIRE(m.has_value());
  CHECK(m->dimension() == dims::mass());
  CHECK(relative_close(m->magnitude(), oracle::m_e, 1e-8));
  const auto muon = species_mass(sm().rows()[1], reg());
  CHECK(relative_close(muon->magnitude(), oracle::m_muon, 1e-8));
  CHECK_FALSE(species_mass(parse_species("x\t1\t1\n").rows()[0], reg()).has_value());
}

TEST_CASE("row validation") {
  const SpeciesTable empty = parse_species("");
  CHECK(empty.empty());
  CHECK(charge_weighted_sum(empty) == Rational(0));
  CHECK(parse_species("# only a comment\n\n").empty());

  CHECK_THROWS_AS(parse_species("photon\t0/1\t1\n"), ZeroCharge);
  CHECK_THROWS_AS(parse_species("photon\t0\t1\n"), ZeroCharge);
  CHECK_THROWS_AS(parse_species("e\t-1\t1\ne\t-1\t1\n"), DuplicateName);
  CHECK(malformed_row("e\t-1\n") == 1);
  CHECK(malformed_row("# c\ne\t-1\t1\t0.5\textra\n") == 2);
  CHECK(malformed_row("e\tminus\t1\n") == 1);
  CHECK(malformed_row("e\t-1\t0\n") == 1);
  CHECK(malformed_row("e\t-1\t1\t-5\n") == 1);
  CHECK(malformed_row("e\t1/0\t1\n") == 1);
  CHECK_THROWS_AS(SpeciesTable({{"x", Rational(1), 0, std::nullopt}}), InvalidParams);
  CHECK_THROWS_AS(load_species("/nonexistent/species.tsv"), Error);
}

TEST_CASE("charge-weighted sum") {
  CHECK(charge_weighted_sum(sm()) == Rational(8));
  const auto [ninths, den] = oracle::species_sum_in_ninths(default_species_path().string());
  CHECK(charge_weighted_sum(sm()) == Rational(ninths, den));
  CHECK(charge_weighted_sum(electron_only()) == Rational(1));
  CHECK(charge_weighted_sum(parse_species("d\t-1/3\t1\n")) == Rational(1, 9));
}

TEST_CASE("sums are additive over disjoint splits") {
  std::mt19937_64 rng(9);
  const auto& rows = sm().rows();
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ParticleSpecies> a, b;
    for (const auto& r : rows) (rng() % 2 ? a : b).push_back(r);
    CHECK(charge_weighted_sum(SpeciesTable(a)) + charge_weighted_sum(SpeciesTable(b)) ==
          charge_weighted_sum(sm()));
  }
}

TEST_CASE("total permittivity") {
  const double eps0 = reg().get("eps0").magnitude();
  const auto single = total_permittivity(electron_only(), 2.0, reg());
  CHECK(single.dimension() == dims::permittivity());
  CHECK(relative_close(single.magnitude(), 2 * oracle::e * oracle::e / (oracle::hbar * oracle::c),
                       1e-9));
  CHECK(single.magnitude() == doctest::Approx(1.62e-12).epsilon(5e-3));

  CHECK(total_permittivity(SpeciesTable{}, 2.0, reg()).magnitude() == 0.0);

  const auto total = total_permittivity(sm(), 2.0, reg());
  CHECK(relative_close(total.magnitude(), 8 * single.magnitude(), 1e-12));
  CHECK(total.magnitude() == doctest::Approx(1.299e-11).epsilon(1e-3));
  CHECK(relative_close(total.magnitude(), 8 * 8 * oracle::kPi * oracle::alpha() * eps0, 1e-9));

  const auto sphere = total_permittivity(electron_only(), 2.0, reg(), SpeciesModel::Sphere);
  CHECK(relative_close(sphere.magnitude() / eps0, 6 * oracle::alpha() * std::pow(0.4, 1.5), 1e-9));
  CHECK_THROWS_AS(total_permittivity(sm(), 0.0, reg()), InvalidParams);
}

TEST_CASE("required species counts") {
  const double alpha = oracle::alpha();
  const double sphere2 = required_species_count(2.0, SpeciesModel::Sphere, reg());
  CHECK(relative_close(sphere2, std::pow(2.5, 1.5) / (3 * alpha * 2), 1e-9));
  CHECK(sphere2 == doctest::Approx(90.3).epsilon(0.005));

  const double simple2 = required_species_count(2.0, SpeciesModel::Simple, reg());
  CHECK(relative_close(simple2, 1 / (8 * oracle::kPi * alpha), 1e-9));
  CHECK(simple2 == doctest::Approx(5.45).epsilon(1e-3));

  const double simple1 = required_species_count(1.0, SpeciesModel::Simple, reg());
  CHECK(relative_close(simple1, 1 / (4 * oracle::kPi * alpha), 1e-9));
  CHECK(simple1 == doctest::Approx(10.91).epsilon(1e-3));
  CHECK_THROWS_AS(required_species_count(0.0, SpeciesModel::Simple, reg()), InvalidParams);
}

TEST_CASE("gap for exact match") {
  const double alpha = oracle::alpha();
  const auto single = gap_for_exact_match(electron_only(), SpeciesModel::Simple, reg());
  CHECK(relative_close(single.gap_ratio, 1 / (4 * oracle::kPi * alpha), 1e-9));
  CHECK(single.gap_ratio == doctest::Approx(10.91).epsilon(1e-3));
  CHECK(single.gap_energy.dimension() == dims::energy());
  CHECK(relative_close(single.gap_energy.magnitude(),
                       single.gap_ratio * oracle::m_e * oracle::c * oracle::c, 1e-9));

  const auto full = gap_for_exact_match(sm(), SpeciesModel::Simple, reg());
  CHECK(relative_close(full.gap_ratio, 1 / (32 * oracle::kPi * alpha), 1e-9));
  CHECK(full.gap_ratio == doctest::Approx(1.363).epsilon(1e-3));

  CHECK_THROWS_AS(gap_for_exact_match(SpeciesTable{}, SpeciesModel::Simple, reg()), EmptyTable);
}

TEST_CASE("back-substitution returns eps0") {
  const double eps0 = reg().get("eps0").magnitude();
  const std::vector<std::string> tables = {
      "electron\t-1\t1\n",
      "a\t2/3\t3\nb\t-1/3\t3\n",
      "a\t5/7\t2\nb\t-3\t1\nc\t1/2\t4\n",
  };
  for (SpeciesModel model : {SpeciesModel::Simple, SpeciesModel::Sphere}) {
    const auto g = gap_for_exact_match(sm(), model, reg());
    CHECK(relative_close(total_permittivity(sm(), g.gap_ratio, reg(), model).magnitude(), eps0,
                         1e-12));
    CHECK(relative_close(required_species_count(g.gap_ratio, model, reg()), 8.0, 1e-12));
    for (const auto& text : tables) {
      const auto t = parse_species(text);
      const auto g = gap_for_exact_match(t, model, reg());
      CHECK(relative_close(total_permittivity(t, g.gap_ratio, reg(), model).magnitude(), eps0,
                           1e-12));
    }
  }
}
