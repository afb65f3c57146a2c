#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "vtm/approximant.hpp"
#include "vtm/errors.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using vtm::MapKind;
using vtm::MapSpec;
using vtm::ParameterRule;
using vtm::RealFunction;
using vtm::RuleVariant;
using cplx = std::complex<double>;

namespace {

std::vector<MapSpec> sample_maps() {
    return {MapSpec::exponential(), MapSpec::double_exponential(), MapSpec::slit_exponential(0.3),
            MapSpec::slit_double_exponential(0.6)};
}

}  // namespace

TEST_CASE("parameter rules", "[approximant]") {
    auto E = vtm::select_parameters(ParameterRule::exponential(0.5), 100);
    CHECK_THAT(E.L, WithinRel(5.0, 1e-15));
    CHECK_FALSE(E.alpha.has_value());

    auto DE = vtm::select_parameters(ParameterRule::double_exponential(1.0), std::numbers::e);
    CHECK_THAT(DE.L, WithinRel(2.0, 1e-14));
    auto DEc = vtm::select_parameters(ParameterRule::double_exponential(1.0, RuleVariant::Caption),
                                      std::numbers::e);
    CHECK_THAT(DEc.L, WithinRel(1.0, 1e-14));

    auto SE = vtm::select_parameters(ParameterRule::slit_exponential(1.0, 0.75), 16);
    CHECK_THAT(SE.L, WithinRel(1.25, 1e-15));
    CHECK_THAT(*SE.alpha, WithinRel(0.25, 1e-15));

    const double pi = std::numbers::pi;
    auto SDE = vtm::select_parameters(ParameterRule::slit_double_exponential(1.0, 0.1), std::numbers::e);
    CHECK_THAT(SDE.L, WithinRel(0.6, 1e-15));
    CHECK_THAT(*SDE.alpha, WithinRel(0.1 * pi / (pi / 2 + 1.0), 1e-14));
    auto SDEc = vtm::select_parameters(
        ParameterRule::slit_double_exponential(1.0, 0.1, RuleVariant::Caption), std::numbers::e);
    CHECK_THAT(*SDEc.alpha, WithinRel(0.1 * pi, 1e-14));
}

TEST_CASE("parameter rules reject invalid constants", "[approximant]") {
    CHECK_THROWS_AS(ParameterRule::exponential(0.0), vtm::PreconditionError);
    CHECK_THROWS_AS(ParameterRule::slit_exponential(1.0, -0.5), vtm::PreconditionError);
    CHECK_THROWS_AS(ParameterRule::slit_double_exponential(1.0, 0.0), vtm::PreconditionError);
    CHECK_THROWS_AS(vtm::select_parameters(ParameterRule::exponential(1.0), 0.5), vtm::PreconditionError);
}

TEST_CASE("constant function is reproduced everywhere", "[approximant]") {
    const RealFunction one = [](double) { return 1.0; };
    for (const auto& map : sample_maps()) {
        const auto p = vtm::build_approximant<double>(one, map, 3.0, 32);
        CHECK_THAT(p.expansion().coefficients()[0], WithinAbs(1.0, 1e-15));
        for (int k = 1; k <= 32; ++k) {
            CHECK_THAT(p.expansion().coefficients()[k], WithinAbs(0.0, 1e-15));
        }
        for (double x : {0.0, 1e-9, 0.2, 0.5, 0.77, 1.0}) {
            CHECK_THAT(p(x), WithinAbs(1.0, 1e-14));
        }
        CHECK(vtm::measure_error<double>(p, one).total <= 1e-14);
    }
}

TEST_CASE("identity function at the midpoint", "[approximant]") {
    const RealFunction id = [](double x) { return x; };
    const auto p = vtm::build_approximant<double>(id, MapSpec::exponential(), 5.0, 64);
    CHECK_THAT(p(0.5), WithinAbs(0.5, 1e-10));
    CHECK_THAT(vtm::evaluate_expansion(p.expansion(), 0.0), WithinAbs(0.5, 1e-10));
}

TEST_CASE("three branches and cached endpoint data", "[approximant]") {
    const RealFunction f = [](double x) { return std::cbrt(x) + x * x; };
    for (const auto& map : sample_maps()) {
        const double L = 2.5;
        const auto p = vtm::build_approximant<double>(f, map, L, 40);
        const double x_L = p.x_L();
        CHECK(x_L >= 0.0);
        CHECK(x_L < 0.5);
        CHECK_THAT(x_L, WithinAbs(1.0 - vtm::psi_inverse(map, L), 1e-13));
        CHECK(p(0.0) == p.endpoint_lo());
        CHECK(p(1.0) == p.endpoint_hi());
        CHECK(p.endpoint_lo() == f(x_L));
        CHECK(p.endpoint_hi() == f(vtm::psi_inverse(map, L)));
        // Constant on the two end pieces.
        for (int i = 0; i < 10; ++i) {
            const double t = i / 10.0;
            CHECK(p(t * x_L) == p.endpoint_lo());
            if (x_L > 0.0) {
                CHECK(p(1.0 - t * x_L * 0.999) == p.endpoint_hi());
            }
        }
        // Interpolation at mapped nodes.
        const auto y = vtm::cosine_nodes(40);
        for (int j = 1; j < 40; ++j) {
            const double x = vtm::psi_inverse(map, L * y[j]);
            // Next to 1 the stored x no longer pins down psi(x), so skip those nodes.
            if (std::min(x, 1.0 - x) < 1e-6) continue;
            CHECK_THAT(p(x), WithinAbs(f(x), 1e-10));
        }
    }
}

TEST_CASE("symmetric functions give symmetric approximants", "[approximant]") {
    // Lipschitz, so the rounding of samples taken just below 1 cannot show up.
    const RealFunction f = [](double x) { return x * (1.0 - x) * (2.0 + std::cos(2.0 * std::numbers::pi * x)); };
    for (const auto& map : sample_maps()) {
        const auto p = vtm::build_approximant<double>(f, map, 3.0, 50);
        for (int i = 0; i <= 100; ++i) {
            const double x = i / 200.0;
            CHECK_THAT(p(x), WithinAbs(p(1.0 - x), 1e-12));
        }
    }
}

TEST_CASE("degree zero gives the midpoint constant", "[approximant]") {
    const RealFunction f = [](double x) { return x * x; };
    const auto p = vtm::build_approximant<double>(f, MapSpec::exponential(), 2.0, 0);
    CHECK(p.degree() == 0);
    CHECK_THAT(p(0.5), WithinAbs(0.25, 1e-15));
    CHECK_THAT(p(0.3), WithinAbs(0.25, 1e-15));
}

TEST_CASE("evaluation failures carry the node index", "[approximant]") {
    const RealFunction f = [](double x) {
        if (x > 0.6) throw std::runtime_error("boom");
        return x;
    };
    try {
        (void)vtm::build_approximant<double>(f, MapSpec::exponential(), 1.0, 8);
        FAIL("expected an EvaluationError");
    } catch (const vtm::EvaluationError& e) {
        CHECK(e.index() >= 0);
        CHECK(e.index() <= 8);
    }
    const RealFunction nan = [](double x) { return x > 0.5 ? std::nan("") : x; };
    CHECK_THROWS_AS(vtm::build_approximant<double>(nan, MapSpec::exponential(), 1.0, 8), vtm::EvaluationError);
}

TEST_CASE("build and evaluation preconditions", "[approximant]") {
    const RealFunction f = [](double x) { return x; };
    CHECK_THROWS_AS(vtm::build_approximant<double>(f, MapSpec::exponential(), 0.0, 8), vtm::PreconditionError);
    CHECK_THROWS_AS(vtm::build_approximant<double>(f, MapSpec::exponential(), 1.0, -1), vtm::PreconditionError);
    const auto p = vtm::build_approximant<double>(f, MapSpec::exponential(), 1.0, 8);
    CHECK_THROWS_AS(p(1.5), vtm::DomainError);
    CHECK_THROWS_AS(vtm::measure_error<double>(p, f, 1), vtm::PreconditionError);
}

TEST_CASE("error report parts", "[approximant]") {
    const RealFunction f = [](double x) { return std::cbrt(x); };
    const auto p = vtm::build_with_rule<double>(f, ParameterRule::exponential(1.0), 400);
    const auto err = vtm::measure_error<double>(p, f);
    CHECK(err.total == std::max({err.interior, err.endpoint_lo, err.endpoint_hi}));
    CHECK(err.interior >= 0.0);
    // The cube root is worst at 0: the low endpoint piece dominates and equals
    // cbrt(x_L) with x_L = 1 / (1 + e^20).
    CHECK(err.endpoint_lo == err.total);
    CHECK_THAT(err.endpoint_lo, WithinRel(std::cbrt(p.x_L()), 1e-12));
    CHECK(err.total < 2e-3);
}

TEST_CASE("interior error is bounded by the coefficient tail", "[approximant]") {
    // F_L(y) = cos(3 pi (y+1)/2) + 0.5 cos(20 pi (y+1)/2) + 0.25 cos(31 pi (y+1)/2), via the E map.
    const double L = 4.0;
    const MapSpec map = MapSpec::exponential();
    const double pi = std::numbers::pi;
    const RealFunction f = [&](double x) {
        const double y = std::clamp(vtm::psi_forward(map, std::clamp(x, 1e-300, 1.0 - 1e-16)) / L, -1.0, 1.0);
        const double t = pi * (y + 1.0) / 2.0;
        return std::cos(3 * t) + 0.5 * std::cos(20 * t) + 0.25 * std::cos(31 * t);
    };
    const auto p = vtm::build_approximant<double>(f, map, L, 16);
    const auto err = vtm::measure_error<double>(p, f);
    CHECK(err.interior <= 2.0 * (0.5 + 0.25) + 1e-12);
    CHECK(err.interior > 0.1);
}

TEST_CASE("error decreases with the budget across a function suite", "[approximant]") {
    const std::vector<RealFunction> suite = {
        [](double x) { return std::cbrt(x); },
        [](double x) { return std::sqrt(x) / (1.0 + 100.0 * (x - 0.5) * (x - 0.5)); },
        [](double x) { return std::log1p(x) * std::pow(1.0 - x, 0.3); },
        [](double x) { return std::exp(x) * std::pow(x, 0.7); },
        [](double x) { return std::sin(8.0 * x); },
    };
    const ParameterRule rule = ParameterRule::slit_exponential(1.0, 0.8);
    for (int n : {32, 64, 128}) {
        std::vector<double> at_n;
        std::vector<double> at_2n;
        for (const auto& f : suite) {
            at_n.push_back(vtm::measure_error<double>(vtm::build_with_rule<double>(f, rule, n), f, 4000).total);
            at_2n.push_back(vtm::measure_error<double>(vtm::build_with_rule<double>(f, rule, 2 * n), f, 4000).total);
        }
        std::nth_element(at_n.begin(), at_n.begin() + 2, at_n.end());
        std::nth_element(at_2n.begin(), at_2n.begin() + 2, at_2n.end());
        CHECK(at_n[2] >= at_2n[2]);
    }
}

TEST_CASE("complex functions use the modulus", "[approximant]") {
    const vtm::ComplexFunction f = [](double x) { return std::polar(1.0, -2.0 * std::numbers::pi * 3.0 * x); };
    const auto p = vtm::build_with_rule<cplx>(f, ParameterRule::slit_exponential(1.0, 0.5), 200);
    const auto err = vtm::measure_error<cplx>(p, f);
    CHECK(err.total < 1e-8);
    CHECK(std::abs(p(0.25) - f(0.25)) < 1e-8);
}
