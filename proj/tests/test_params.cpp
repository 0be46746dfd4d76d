#include <doctest.h>

#include <cmath>

#include "srnoise/json_io.hpp"
#include "srnoise/langevin.hpp"
#include "srnoise/numerics.hpp"
#include "srnoise/params.hpp"
#include "srnoise/presets.hpp"

using namespace srnoise;

TEST_CASE("the preset parameter table validates") {
    const auto p = validate(presets::base());
    CHECK(p.omega_rabi() == 34.0);
    CHECK(p.kappa() == 50.0);
    CHECK(p.gamma_perp() == 50.0);
    CHECK(p.pump() == 0.7);
    CHECK(p.n_emitters() == 100);
    CHECK(p.coupling_f() == 0.5);
}

TEST_CASE("validation reports every violation at once") {
    LaserParams bad = presets::base();
    bad.kappa = 0.0;
    bad.coupling_f = 1.5;
    bad.pump = -0.2;
    try {
        validate(bad);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(e.violations().size() == 3);
        bool has_rate = false, has_coupling = false, has_pump = false;
        for (const auto& v : e.violations()) {
            has_rate |= v.code == "NonPositiveRate";
            has_coupling |= v.code == "CouplingOutOfRange";
            has_pump |= v.code == "NegativePump";
        }
        CHECK(has_rate);
        CHECK(has_coupling);
        CHECK(has_pump);
    }
}

TEST_CASE("single-field violations") {
    LaserParams p = presets::base();
    p.kappa = 0.0;
    CHECK_THROWS_AS(validate(p), ValidationError);

    p = presets::base();
    p.coupling_f = 1.5;
    CHECK_THROWS_AS(validate(p), ValidationError);

    p = presets::base();
    p.n_emitters = 0;
    CHECK_THROWS_AS(validate(p), ValidationError);
}

TEST_CASE("derived rates") {
    SUBCASE("gamma_p at P = 1") {
        auto lp = presets::base();
        lp.pump = 1.0;
        CHECK(derive_rates(validate(lp)).gamma_p == 2.0);
    }
    SUBCASE("threshold inversion at the preset parameters") {
        const auto r = derive_rates(validate(presets::base()));
        CHECK(r.n_threshold == doctest::Approx(2500.0 / 1156.0).epsilon(1e-15));
        CHECK(r.sr_ratio == 2.0);
        CHECK(r.regime == SrRegime::Superradiant);
    }
    SUBCASE("non-superradiant below ratio 1") {
        const auto r = derive_rates(validate(presets::with_ratio_and_pump(1.0 / 30.0, 1.0)));
        CHECK(r.sr_ratio == doctest::Approx(1.0 / 30.0));
        CHECK(r.regime == SrRegime::NonSuperradiant);
    }
    SUBCASE("decoupled field has infinite threshold") {
        auto lp = presets::base();
        lp.omega_rabi = 0.0;
        CHECK(std::isinf(derive_rates(validate(lp)).n_threshold));
    }
}

TEST_CASE("validation is idempotent") {
    const auto vp = validate(presets::base());
    CHECK(validate(vp.to_params()) == vp);
}

TEST_CASE("rescaling by a common factor leaves dimensionless members unchanged") {
    const auto base = derive_rates(validate(presets::base()));
    LaserParams scaled = presets::base();
    const double lambda = 1e9;  // rad/s units with gamma_par = 1e9
    scaled.omega_rabi *= lambda;
    scaled.kappa *= lambda;
    scaled.gamma_perp *= lambda;
    scaled.gamma_par *= lambda;
    scaled.units = RateUnits::RadPerSec;
    const auto r = derive_rates(validate(scaled));
    CHECK(r.n_threshold == doctest::Approx(base.n_threshold).epsilon(1e-12));
    CHECK(r.sr_ratio == doctest::Approx(base.sr_ratio).epsilon(1e-12));
    CHECK(r.gamma_p == doctest::Approx(base.gamma_p).epsilon(1e-12));
}

TEST_CASE("field drift matrix is marginally stable exactly at threshold") {
    const auto p = validate(presets::base());
    const auto r = derive_rates(p);
    const auto ev = num::eigenvalues(field_drift_matrix(p, r.n_threshold));
    double max_re = -1e300;
    for (const auto& e : ev) max_re = std::max(max_re, e.real());
    CHECK(std::abs(max_re) < 1e-10);

    const auto below = num::eigenvalues(field_drift_matrix(p, r.n_threshold * (1.0 - 1e-6)));
    double max_re_below = -1e300;
    for (const auto& e : below) max_re_below = std::max(max_re_below, e.real());
    CHECK(max_re_below < 0.0);
}

TEST_CASE("JSON parameter ingestion") {
    SUBCASE("round trip") {
        const auto p = params_from_json_text(R"({
            "omega_rabi": 34, "kappa": 50, "gamma_perp": 50, "gamma_par": 1,
            "pump": 0.7, "n_emitters": 100, "coupling_f": 0.5, "units": "gamma_par"
        })");
        CHECK(validate(p) == validate(presets::base()));
    }
    SUBCASE("unknown keys rejected") {
        CHECK_THROWS_WITH_AS(params_from_json_text(R"({
            "omega_rabi": 34, "kappa": 50, "gamma_perp": 50, "gamma_par": 1,
            "pump": 0.7, "n_emitters": 100, "coupling_f": 0.5, "detuning": 3
        })"),
                             doctest::Contains("UnknownKey"), InputError);
    }
    SUBCASE("units parsed") {
        const auto p = params_from_json_text(R"({
            "omega_rabi": 34e9, "kappa": 50e9, "gamma_perp": 50e9, "gamma_par": 1e9,
            "pump": 0.7, "n_emitters": 100, "coupling_f": 0.5, "units": "rad_per_s"
        })");
        CHECK(validate(p) == validate(presets::base()));
    }
    SUBCASE("missing key") {
        CHECK_THROWS_AS(params_from_json_text("{\"kappa\": 1}"), InputError);
    }
}
