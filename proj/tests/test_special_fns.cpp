#include <doctest.h>

#include <cmath>
#include <numbers>

#include <fading/special_fns.hpp>

using namespace fading;

namespace {

double rel(double v, double ref) { return std::fabs(v - ref) / std::fabs(ref); }

// Independent I_nu oracle: the power series summed in long double.
long double i_series_ld(long double nu, long double x) {
    const long double h = x / 2.0L;
    long double term = std::pow(h, nu) / std::tgamma(nu + 1.0L);
    long double sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= h * h / (static_cast<long double>(k) * (k + nu));
        sum += term;
        if (term < sum * 1e-21L) break;
    }
    return sum;
}

// Independent K_nu oracle: int_0^inf e^{-x cosh t} cosh(nu t) dt by the trapezoid rule,
// which converges geometrically for this analytic, doubly decaying integrand.
long double k_integral_ld(long double nu, long double x) {
    const long double h = 1.0L / 64.0L;
    long double sum = 0.5L * std::exp(-x);
    for (int i = 1;; ++i) {
        const long double t = h * i;
        const long double v = std::exp(-x * std::cosh(t) + nu * t) * 0.5L * (1.0L + std::exp(-2.0L * nu * t));
        sum += v;
        if (v < sum * 1e-22L && t > 1.0L) break;
    }
    return sum * h;
}

}  // namespace

TEST_CASE("ln_gamma reference values and domain") {
    CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rel(ln_gamma(0.5), std::log(std::sqrt(std::numbers::pi))) <= 1e-13);
    CHECK(rel(ln_gamma(6.0), std::log(120.0)) <= 1e-13);
    for (double x : {0.01, 0.3, 1.7, 4.5, 12.25, 50.0, 170.5})
        CHECK(rel(ln_gamma(x), std::log(std::tgamma(x))) <= 1e-13);
    CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
    CHECK_THROWS_AS(ln_gamma(-1.5), DomainError);
}

TEST_CASE("bessel_i reference values") {
    CHECK(bessel_i(0.0, 0.0) == 1.0);
    CHECK(rel(bessel_i(0.5, 1.0), std::sqrt(2.0 / std::numbers::pi) * std::sinh(1.0)) <= 1e-14);
    CHECK(rel(bessel_i(0.5, 1.0), 0.937674888245487646717) <= 1e-14);
    CHECK(rel(bessel_i(1.0, 2.0), 1.590636854637329063382) <= 1e-14);
    CHECK(rel(bessel_i(2.5, 10.0), 2028.512757391935669083) <= 1e-13);
    CHECK(rel(bessel_i(0.0, 30.0), 781672297823.9774897174) <= 1e-13);
    CHECK(bessel_i(1.0, 0.0) == 0.0);
    CHECK(bessel_i(-0.5, 0.0) == std::numeric_limits<double>::infinity());
}

TEST_CASE("bessel_i matches the long-double series for x <= 30") {
    for (double nu : {-0.5, -0.25, 0.0, 0.5, 1.0, 1.7, 3.0, 9.5, 20.0})
        for (double x : {1e-3, 0.1, 0.5, 1.0, 4.0, 10.0, 22.0, 30.0}) {
            CAPTURE(nu);
            CAPTURE(x);
            CHECK(rel(bessel_i(nu, x), static_cast<double>(i_series_ld(nu, x))) <= 1e-12);
        }
}

TEST_CASE("bessel_i domain, scaling and log form") {
    CHECK_THROWS_AS(bessel_i(-0.6, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_i(1.0, -1.0), DomainError);
    for (double x : {0.5, 5.0, 60.0, 400.0}) {
        CHECK(rel(bessel_i_scaled(1.5, x), std::exp(log_bessel_i(1.5, x) - x)) <= 1e-12);
        CHECK(rel(log_bessel_i(1.5, x), std::log(bessel_i(1.5, x))) <= 1e-12);
    }
    // Far beyond the overflow point the log form stays finite and follows e^x / sqrt(2 pi x).
    const double x = 1e5;
    CHECK(std::fabs(log_bessel_i(2.0, x) - (x - 0.5 * std::log(2.0 * std::numbers::pi * x))) < 1e-4);
}

TEST_CASE("bessel_k reference values and symmetry") {
    CHECK(rel(bessel_k(0.5, 1.0), std::sqrt(std::numbers::pi / 2.0) * std::exp(-1.0)) <= 1e-14);
    CHECK(bessel_k(-0.5, 1.0) == doctest::Approx(bessel_k(0.5, 1.0)).epsilon(1e-15));
    CHECK(rel(bessel_k(2.0, 3.0), 0.06151045847174203765682) <= 1e-13);
    CHECK(rel(bessel_k(0.5, 2.0), 0.1199377719680614473680) <= 1e-14);
    CHECK(rel(bessel_k(7.3, 0.01), 39882055110188726415.82747) <= 1e-12);
    CHECK(rel(bessel_k(0.0, 50.0), 3.410167749789495513921e-23) <= 1e-12);
    CHECK(rel(bessel_k(15.0, 1.0), 1403066801155039.004444) <= 1e-12);
    CHECK_THROWS_AS(bessel_k(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(bessel_k(1.0, -2.0), DomainError);
}

TEST_CASE("bessel_k matches the integral representation") {
    for (double nu : {0.0, 1e-7, 0.3, 1.0, 1.0 + 1e-7, 2.5, 4.0, 7.3, -3.2, 12.0, 20.0})
        for (double x : {1e-3, 0.05, 0.7, 1.9, 2.1, 8.0, 25.0, 50.0}) {
            CAPTURE(nu);
            CAPTURE(x);
            CHECK(rel(bessel_k(nu, x), static_cast<double>(k_integral_ld(nu, x))) <= 1e-10);
        }
}

TEST_CASE("bessel_k log and scaled forms") {
    for (double nu : {0.0, 2.5, 40.0})
        for (double x : {1e-4, 0.3, 5.0, 100.0}) {
            const double lk = log_bessel_k(nu, x);
            CHECK(std::isfinite(lk));
            if (std::isfinite(bessel_k(nu, x)) && bessel_k(nu, x) > 0.0) {
                CHECK(rel(lk, std::log(bessel_k(nu, x))) <= 1e-12);
                CHECK(rel(bessel_k_scaled(nu, x), bessel_k(nu, x) * std::exp(x)) <= 1e-12);
            }
        }
    // Deep underflow: log form follows the large-argument asymptote.
    const double x = 1e4;
    CHECK(std::fabs(log_bessel_k(1.0, x) - (-x + 0.5 * std::log(std::numbers::pi / (2.0 * x)))) < 1e-4);
}

TEST_CASE("Wronskian I_nu K_{nu+1} + I_{nu+1} K_nu = 1/x") {
    for (double nu : {0.0, 0.25, 0.5, 1.0, 2.5, 7.3, 15.0})
        for (double x : {0.01, 0.1, 1.0, 5.0, 20.0, 50.0}) {
            const double w = bessel_i(nu, x) * bessel_k(nu + 1.0, x) + bessel_i(nu + 1.0, x) * bessel_k(nu, x);
            CAPTURE(nu);
            CAPTURE(x);
            CHECK(rel(w, 1.0 / x) <= 1e-8);
        }
}

TEST_CASE("half-order closed forms") {
    for (double x : {0.01, 0.5, 1.0, 3.0, 10.0, 30.0}) {
        const double s = std::sqrt(2.0 / (std::numbers::pi * x));
        CHECK(rel(bessel_i(0.5, x), s * std::sinh(x)) <= 1e-10);
        CHECK(rel(bessel_i(-0.5, x), s * std::cosh(x)) <= 1e-10);
        const double k = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);
        CHECK(rel(bessel_k(0.5, x), k) <= 1e-10);
        CHECK(rel(bessel_k(1.5, x), k * (1.0 + 1.0 / x)) <= 1e-10);
    }
}

TEST_CASE("Bessel positivity and monotonicity") {
    for (double nu : {0.0, 0.5, 2.0, 6.5}) {
        double prev_i = 0.0;
        double prev_k = std::numeric_limits<double>::infinity();
        for (double x = 0.05; x < 40.0; x *= 1.3) {
            const double i = bessel_i(nu, x);
            const double k = bessel_k(nu, x);
            CHECK(i > 0.0);
            CHECK(k > 0.0);
            CHECK(i > prev_i);
            CHECK(k < prev_k);
            prev_i = i;
            prev_k = k;
        }
    }
}

TEST_CASE("gross_weight equals its product form") {
    CHECK(gross_weight(0, 0) == 1.0);
    CHECK(gross_weight(0, 30) == 1.0);
    CHECK(gross_weight(1, 30) == doctest::Approx(1.0).epsilon(1e-14));
    for (int n : {1, 5, 10, 30, 60})
        for (int l = 0; l <= n; ++l) {
            double prod = 1.0;
            for (int j = 1; j <= l - 1; ++j) prod *= 1.0 - static_cast<double>(j * j) / (n * n);
            const double gamma_form = std::exp(std::lgamma(n + l) - std::lgamma(n - l + 1.0)) * std::pow(n, 1 - 2 * l);
            CAPTURE(n);
            CAPTURE(l);
            CHECK(gross_weight(l, n) == doctest::Approx(prod).epsilon(1e-12).scale(1e-300));
            CHECK(gross_weight(l, n) == doctest::Approx(gamma_form).epsilon(1e-9).scale(1e-300));
        }
}

TEST_CASE("Gross polynomial converges to the exact series") {
    for (double nu : {0.5, 1.0, 2.0}) {
        double e10 = 0.0;
        double e30 = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double x = 0.25 * i;
            const double exact = bessel_i(nu, x);
            e10 = std::max(e10, rel(bessel_i(nu, x, GrossPoly{10}), exact));
            e30 = std::max(e30, rel(bessel_i(nu, x, GrossPoly{30}), exact));
        }
        CAPTURE(nu);
        CHECK(e30 < e10);
    }
    // With n = 0 only the leading term survives.
    CHECK(rel(bessel_i(1.0, 0.5, GrossPoly{0}), 0.25) <= 1e-15);
}

TEST_CASE("log_bessel_k at arguments far below the recurrence overflow point") {
    for (double nu : {1.5, 5.6, 12.0})
        for (double x : {1e-100, 1e-200, 1e-300}) {
            // Leading small-argument term; corrections are O(x^2).
            const double lead = std::lgamma(nu) + nu * std::log(2.0 / x) - std::log(2.0);
            CAPTURE(nu);
            CAPTURE(x);
            CHECK(rel(log_bessel_k(nu, x), lead) <= 1e-13);
        }
}
