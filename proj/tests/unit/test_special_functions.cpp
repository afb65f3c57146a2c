#include <catch_amalgamated.hpp>

#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "vtm/errors.hpp"
#include "vtm/special_functions.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using vtm::jacobi_elliptic;
using vtm::jacobi_sn;
using vtm::lambert_w0;
using vtm::log_ratio_1p_exp;

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const double kBranchPoint = -std::exp(-1.0);
}  // namespace

TEST_CASE("lambert_w0 exact points", "[special]") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK_THAT(lambert_w0(std::numbers::e), WithinRel(1.0, 1e-15));
    CHECK(lambert_w0(kBranchPoint) == -1.0);
    CHECK(std::isinf(lambert_w0(std::numeric_limits<double>::infinity())));
}

TEST_CASE("lambert_w0 matches frozen values and bisection", "[special]") {
    CHECK_THAT(lambert_w0(1.0), WithinRel(oracle::kW1, 1e-15));
    CHECK_THAT(lambert_w0(1.0), WithinAbs(oracle::lambert_bisect(1.0, 0.0, 1.0), 1e-12));
    CHECK_THAT(lambert_w0(10.0), WithinRel(oracle::kW10, 1e-15));
    CHECK_THAT(lambert_w0(1e6), WithinRel(oracle::kW1e6, 1e-15));
    CHECK_THAT(lambert_w0(-0.3), WithinRel(oracle::kWm03, 1e-14));
    CHECK_THAT(lambert_w0(-0.36), WithinRel(oracle::kWm036, 1e-12));
}

TEST_CASE("lambert_w0 agrees with boost on a wide grid", "[special]") {
    for (int i = 0; i <= 100; ++i) {
        const double x = std::pow(10.0, -8.0 + 0.14 * i);
        CHECK_THAT(lambert_w0(x), WithinRel(boost::math::lambert_w0(x), 1e-14));
    }
}

TEST_CASE("lambert_w0 residual and monotonicity on the log grid", "[special]") {
    // 200 points: 100 on [-1/e, 0) approaching the branch point, 100 log-spaced to 1e6.
    double previous = -2.0;
    for (int i = 0; i < 200; ++i) {
        double x;
        if (i < 100) {
            x = kBranchPoint * std::pow(10.0, -8.0 * i / 99.0);
        } else {
            x = std::pow(10.0, -8.0 + 14.0 * (i - 100) / 99.0);
        }
        const double w = lambert_w0(x);
        CHECK(std::abs(w * std::exp(w) - x) <= 1e-13 * std::max(1.0, std::abs(x)));
        CHECK(w >= -1.0);
        CHECK(w > previous);
        previous = w;
    }
}

TEST_CASE("lambert_w0 rejects the region below the branch point", "[special]") {
    CHECK_THROWS_AS(lambert_w0(-0.4), vtm::DomainError);
    CHECK_THROWS_AS(lambert_w0(std::nan("")), vtm::DomainError);
}

TEST_CASE("lambert_w0 reports an unreachable tolerance", "[special]") {
    CHECK_THROWS_AS(lambert_w0(3.7, 1e-30), vtm::ConvergenceError);
}

TEST_CASE("jacobi_sn degenerate cases", "[special]") {
    CHECK(jacobi_sn(0.0, kInvSqrt2) == 0.0);
    for (double u : {-3.0, -0.4, 0.0, 1.1, 7.5}) {
        CHECK_THAT(jacobi_sn(u, 0.0), WithinAbs(std::sin(u), 1e-15));
    }
}

TEST_CASE("jacobi_sn reaches 1 at the quarter period", "[special]") {
    const double K = oracle::complete_elliptic_k(kInvSqrt2);
    CHECK_THAT(K, WithinRel(oracle::kKInvSqrt2, 1e-15));
    CHECK_THAT(jacobi_sn(K, kInvSqrt2), WithinAbs(1.0, 1e-14));
    CHECK_THAT(jacobi_sn(2.0 * K, kInvSqrt2), WithinAbs(0.0, 1e-14));
}

TEST_CASE("jacobi_elliptic matches frozen values", "[special]") {
    for (const auto& ref : oracle::kJacobiInvSqrt2) {
        const auto j = jacobi_elliptic(ref.u, kInvSqrt2);
        CHECK_THAT(j.sn, WithinAbs(ref.sn, 1e-14));
        CHECK_THAT(j.cn, WithinAbs(ref.cn, 1e-14));
        CHECK_THAT(j.dn, WithinAbs(ref.dn, 1e-14));
    }
    CHECK_THAT(jacobi_sn(0.7, 0.3), WithinAbs(oracle::kSn07k03, 1e-14));
    CHECK_THAT(jacobi_sn(3.1, 0.95), WithinAbs(oracle::kSn31k095, 1e-13));
}

TEST_CASE("jacobi_elliptic identities across moduli", "[special]") {
    for (double k : {0.0, 0.3, kInvSqrt2, 0.95}) {
        for (int i = 0; i <= 80; ++i) {
            const double u = -20.0 + 0.5 * i;
            const auto j = jacobi_elliptic(u, k);
            CHECK_THAT(jacobi_sn(-u, k), WithinAbs(-j.sn, 1e-14));
            CHECK(std::abs(j.sn) <= 1.0);
            CHECK_THAT(j.sn * j.sn + j.cn * j.cn, WithinAbs(1.0, 1e-12));
            CHECK_THAT(j.dn * j.dn + k * k * j.sn * j.sn, WithinAbs(1.0, 1e-12));
            CHECK_THAT(j.sn, WithinAbs(boost::math::jacobi_sn(k, u), 1e-12));
        }
    }
}

TEST_CASE("jacobi_elliptic rejects moduli outside [0,1)", "[special]") {
    CHECK_THROWS_AS(jacobi_elliptic(0.5, 1.0), vtm::DomainError);
    CHECK_THROWS_AS(jacobi_elliptic(0.5, -0.1), vtm::DomainError);
}

TEST_CASE("log_ratio_1p_exp special points", "[special]") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(log_ratio_1p_exp(3.25, 3.25) == 0.0);
    CHECK(log_ratio_1p_exp(1e300, 1e300) == 0.0);
    CHECK_THAT(log_ratio_1p_exp(-inf, 0.0), WithinRel(-std::numbers::ln2, 1e-15));
    CHECK_THAT(log_ratio_1p_exp(0.0, -inf), WithinRel(std::numbers::ln2, 1e-15));
    CHECK(log_ratio_1p_exp(inf, 0.0) == inf);
    CHECK(log_ratio_1p_exp(0.0, inf) == -inf);
}

TEST_CASE("log_ratio_1p_exp matches extended precision", "[special]") {
    for (const auto& ref : oracle::kLogRatio) {
        CHECK_THAT(log_ratio_1p_exp(ref.a, ref.b), WithinRel(ref.value, 1e-13));
    }
}

TEST_CASE("log_ratio_1p_exp agrees with the naive formula without overflow", "[special]") {
    for (int i = 0; i <= 40; ++i) {
        for (int j = 0; j <= 40; ++j) {
            const double a = -30.0 + 1.45 * i;
            const double b = -30.0 + 1.45 * j;
            const double naive = std::log((1.0 + std::exp(a)) / (1.0 + std::exp(b)));
            CHECK_THAT(log_ratio_1p_exp(a, b), WithinAbs(naive, 1e-13));
        }
    }
}

TEST_CASE("log1p_exp and the log-space helpers", "[special]") {
    CHECK_THAT(vtm::log1p_exp(800.0), WithinRel(800.0, 1e-16));
    CHECK_THAT(vtm::log1p_exp(-800.0), WithinAbs(0.0, 1e-300));
    CHECK_THAT(vtm::log1p_exp(0.0), WithinRel(std::numbers::ln2, 1e-15));
    CHECK_THAT(vtm::log_expm1(1e-10), WithinRel(std::log(1e-10) + 0.5e-10, 1e-14));
    CHECK_THAT(vtm::log_expm1(50.0), WithinRel(50.0, 1e-16));
    CHECK_THAT(vtm::log1m_exp_neg(1e-10), WithinRel(std::log(1e-10), 1e-9));
    CHECK_THAT(vtm::log1m_exp_neg(2.0), WithinRel(std::log1p(-std::exp(-2.0)), 1e-15));
}
