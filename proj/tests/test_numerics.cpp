#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "srnoise/numerics.hpp"

using namespace srnoise;
using num::cplx;
using num::CMat;
using num::Mat;

TEST_CASE("bisect finds simple roots") {
    const auto f = [](double x) { return x - 1.0; };
    CHECK(num::bisect(f, 0.0, 2.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-12));

    const auto cube = [](double x) { return x * x * x - 2.0; };
    CHECK(num::bisect(cube, 1.0, 2.0, 1e-13) ==
          doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
}

TEST_CASE("bisect rejects a bracket without sign change") {
    CHECK_THROWS_WITH_AS(num::bisect([](double x) { return x * x + 1.0; }, 0.0, 1.0, 1e-10),
                         doctest::Contains("NoSignChange"), NumericalError);
}

TEST_CASE("bisect iteration count is bounded") {
    std::size_t evals = 0;
    const auto f = [&evals](double x) {
        ++evals;
        return std::sin(x) - 0.3;
    };
    const double lo = 0.0, hi = 1.5, tol = 1e-11;
    num::bisect(f, lo, hi, tol);
    const auto bound = static_cast<std::size_t>(std::ceil(std::log2((hi - lo) / tol))) + 2;
    CHECK(evals <= bound + 2);  // + endpoint evaluations
}

TEST_CASE("integrate_line handles the analytic family") {
    const double pi = std::acos(-1.0);
    SUBCASE("lorentzian") {
        const double c = 3.0, gamma = 0.7;
        const auto r = num::integrate_line(
            [=](double w) { return c / (w * w + gamma * gamma); }, 1e-12, 1e-16);
        CHECK(r.value == doctest::Approx(pi * c / gamma).epsilon(1e-10));
        CHECK(r.evaluations > 0);
    }
    SUBCASE("gaussian") {
        const auto r = num::integrate_line([](double w) { return std::exp(-w * w); }, 1e-12, 1e-16);
        CHECK(r.value == doctest::Approx(std::sqrt(pi)).epsilon(1e-10));
    }
    SUBCASE("narrow displaced lorentzian pair with breakpoints") {
        const double w0 = 250.0, gamma = 2.0;
        const std::vector<double> bps{-w0, w0};
        const auto r = num::integrate_line(
            [=](double w) {
                return 1.0 / ((w - w0) * (w - w0) + gamma * gamma) +
                       1.0 / ((w + w0) * (w + w0) + gamma * gamma);
            },
            1e-10, 1e-14, bps);
        CHECK(r.value == doctest::Approx(2.0 * pi / gamma).epsilon(1e-8));
    }
}

TEST_CASE("integrate_line error estimate bounds the true error") {
    // Lorentzian, Gaussian, and positive rational quartic with randomized
    // parameters; truth taken from a much tighter run of the same routine.
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = 0.1 + 10.0 * u(rng);
        const double b = 0.1 + 10.0 * u(rng);
        const double c = 0.5 + 20.0 * u(rng);
        const double d = 0.1 + 5.0 * u(rng);
        std::function<double(double)> f;
        switch (trial % 3) {
            case 0: f = [=](double w) { return a / (w * w + b * b); }; break;
            case 1: f = [=](double w) { return a * std::exp(-d * w * w); }; break;
            default:
                f = [=](double w) {
                    const double w2 = w * w;
                    return (a + b * w2) / (w2 * w2 + d * w2 + c);
                };
        }
        const auto loose = num::integrate_line(f, 1e-6, 1e-12);
        const auto tight = num::integrate_line(f, 1e-13, 1e-16);
        const double true_err = std::abs(loose.value - tight.value);
        CHECK(loose.abs_error_estimate + 1e-15 >= true_err);
    }
}

TEST_CASE("integrate_line reports non-convergence on a tiny panel budget") {
    CHECK_THROWS_WITH_AS(
        num::integrate_line(
            [](double w) { return 1.0 / std::sqrt(std::abs(w) + 1e-300) / (1.0 + w * w); },
            1e-12, 1e-16, {}, 8),
        doctest::Contains("NonConvergentQuadrature"), NumericalError);
}

TEST_CASE("solve_dense basics") {
    SUBCASE("identity") {
        CMat eye = CMat::identity(3);
        const std::vector<cplx> b{cplx(1, 2), cplx(-3, 0), cplx(0, 5)};
        const auto x = num::solve_dense(eye, b);
        for (std::size_t i = 0; i < 3; ++i) CHECK(x[i] == b[i]);
    }
    SUBCASE("2x2 against the hand inverse") {
        Mat a(2, 2);
        a(0, 0) = 1;
        a(0, 1) = 2;
        a(1, 0) = 3;
        a(1, 1) = 4;
        // inverse = [[-2, 1], [1.5, -0.5]]
        const auto x = num::solve_dense(a, std::vector<double>{1.0, 0.0});
        CHECK(x[0] == doctest::Approx(-2.0).epsilon(1e-14));
        CHECK(x[1] == doctest::Approx(1.5).epsilon(1e-14));
    }
    SUBCASE("rank deficient") {
        Mat a(2, 2);
        a(0, 0) = 1;
        a(0, 1) = 2;
        a(1, 0) = 2;
        a(1, 1) = 4;
        CHECK_THROWS_WITH_AS(num::solve_dense(a, std::vector<double>{1.0, 1.0}),
                             doctest::Contains("SingularMatrix"), NumericalError);
    }
    SUBCASE("dimension cap") {
        CMat a(9, 9);
        CHECK_THROWS_AS(num::solve_dense(a, CMat(9, 1)), InputError);
    }
    SUBCASE("complex residual") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        CMat a(5, 5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) a(i, j) = cplx(u(rng), u(rng));
        std::vector<cplx> b(5);
        for (auto& v : b) v = cplx(u(rng), u(rng));
        const auto x = num::solve_dense(a, b);
        double resid = 0.0, bnorm = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            cplx s = -b[i];
            for (std::size_t j = 0; j < 5; ++j) s += a(i, j) * x[j];
            resid += std::norm(s);
            bnorm += std::norm(b[i]);
        }
        CHECK(std::sqrt(resid) <= 1e-12 * std::sqrt(bnorm));
    }
}

TEST_CASE("factor_symmetric") {
    SUBCASE("PSD reconstruction") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Mat b(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) b(i, j) = u(rng);
        const Mat m = b * b.transposed();
        const auto factor = num::factor_symmetric(m);
        REQUIRE(std::holds_alternative<num::SymmetricFactor>(factor));
        const Mat& l = std::get<num::SymmetricFactor>(factor).b;
        const Mat back = l * l.transposed();
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(back(i, j) == doctest::Approx(m(i, j)).epsilon(1e-10));
    }
    SUBCASE("rank deficient PSD") {
        Mat m(2, 2);
        m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 1.0;
        const auto factor = num::factor_symmetric(m);
        REQUIRE(std::holds_alternative<num::SymmetricFactor>(factor));
        const Mat& l = std::get<num::SymmetricFactor>(factor).b;
        const Mat back = l * l.transposed();
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(back(i, j) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("indefinite reports the smallest eigenvalue") {
        Mat m(2, 2);
        m(0, 0) = 1.0;
        m(1, 1) = -2.0;
        const auto factor = num::factor_symmetric(m);
        REQUIRE(std::holds_alternative<num::Indefinite>(factor));
        CHECK(std::get<num::Indefinite>(factor).min_eigenvalue ==
              doctest::Approx(-2.0).epsilon(1e-12));
    }
}

TEST_CASE("eigenvalues of small matrices") {
    SUBCASE("triangular") {
        Mat a(3, 3);
        a(0, 0) = -1.0;
        a(0, 1) = 5.0;
        a(1, 1) = -2.0;
        a(2, 2) = -3.0;
        auto ev = num::eigenvalues(a);
        std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) { return x.real() < y.real(); });
        CHECK(ev[0].real() == doctest::Approx(-3.0).epsilon(1e-12));
        CHECK(ev[1].real() == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(ev[2].real() == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("rotation block gives a conjugate pair") {
        Mat a(2, 2);
        a(0, 0) = -0.5;
        a(0, 1) = 2.0;
        a(1, 0) = -2.0;
        a(1, 1) = -0.5;
        const auto ev = num::eigenvalues(a);
        for (const auto& e : ev) {
            CHECK(e.real() == doctest::Approx(-0.5).epsilon(1e-12));
            CHECK(std::abs(e.imag()) == doctest::Approx(2.0).epsilon(1e-12));
        }
    }
    SUBCASE("agrees with the Jacobi route on a symmetric matrix") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        Mat a(5, 5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i; j < 5; ++j) a(i, j) = a(j, i) = u(rng);
        auto ev = num::eigenvalues(a);
        std::vector<double> re;
        for (const auto& e : ev) {
            CHECK(std::abs(e.imag()) < 1e-9);
            re.push_back(e.real());
        }
        std::sort(re.begin(), re.end());
        const auto jac = num::symmetric_eigenvalues(a);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(re[i] == doctest::Approx(jac[i]).epsilon(1e-9));
    }
}
