#include "fading/special_fns.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace fading {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 100000;

// Taylor coefficients of 1/Gamma(z) = sum_{k>=1} c_k z^k (Abramowitz & Stegun 6.1.34).
constexpr std::array<double, 26> kRecipGamma = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

struct TemmeGammas {
    double gam1;    // (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
    double gam2;    // (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
    double gampl;   // 1/Gamma(1+mu)
    double gammi;   // 1/Gamma(1-mu)
};

// |mu| <= 1/2. 1/Gamma(1+z) = sum_k kRecipGamma[k] z^k, split into even and odd parts.
TemmeGammas temme_gammas(double mu) {
    const double mu2 = mu * mu;
    // Horner in mu^2 over the even and odd coefficient subsequences; odd is divided by mu.
    double even = 0.0;
    double odd = 0.0;
    const int last = static_cast<int>(kRecipGamma.size()) - 1;
    for (int k = (last % 2 == 0 ? last : last - 1); k >= 0; k -= 2) even = even * mu2 + kRecipGamma[k];
    for (int k = (last % 2 == 1 ? last : last - 1); k >= 1; k -= 2) odd = odd * mu2 + kRecipGamma[k];
    TemmeGammas g{};
    g.gam1 = -odd;
    g.gam2 = even;
    g.gampl = even + mu * odd;
    g.gammi = even - mu * odd;
    return g;
}

double log_i_asymptotic(double nu, double x) {
    // Hankel expansion: I_nu(x) ~ e^x / sqrt(2 pi x) sum_k (-1)^k a_k(nu) / x^k.
    const double four_nu2 = 4.0 * nu * nu;
    double sum = 1.0;
    double term = 1.0;
    double prev_abs = kInf;
    for (int k = 1; k < 500; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(four_nu2 - odd * odd) / (k * 8.0 * x);
        const double a = std::fabs(term);
        if (a > prev_abs) break;  // asymptotic series started to diverge
        sum += term;
        if (a < kEps * std::fabs(sum) || term == 0.0) break;
        prev_abs = a;
    }
    return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(sum);
}

double log_i_series(double nu, double x, double tol) {
    const double half = 0.5 * x;
    const double q = half * half;
    const double log_t0 = nu * std::log(half) - ln_gamma(nu + 1.0);
    double sum = 1.0;
    double term = 1.0;
    double offset = 0.0;
    constexpr double kRescale = 1e-280;
    for (int l = 0; l < kMaxIter; ++l) {
        const double ratio = q / ((l + 1.0) * (nu + l + 1.0));
        term *= ratio;
        sum += term;
        if (term <= tol * sum && ratio < 1.0) break;
        if (sum > 1e280) {
            sum *= kRescale;
            term *= kRescale;
            offset -= std::log(kRescale);
        }
    }
    return log_t0 + std::log(sum) + offset;
}

bool use_asymptotic(double nu, double x) {
    return x > 50.0 && x > 2.0 * nu * nu;
}

// log K_nu(x) for nu >= 0 via Temme (x < 2) or Steed's CF2 (x >= 2), then upward
// recurrence from the fractional order in [-1/2, 1/2].
double log_k_nonneg(double nu, double x) {
    const int nl = static_cast<int>(std::floor(nu + 0.5));
    const double xmu = nu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    double rkmu = 0.0;
    double ratio = 0.0;  // K_{xmu+1} / K_xmu
    double log_scale = 0.0;

    if (x < 2.0) {
        const double x2 = 0.5 * x;
        const double pimu = std::numbers::pi * xmu;
        const double fact = std::fabs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
        double d = -std::log(x2);
        double e = xmu * d;
        const double fact2 = std::fabs(e) < kEps ? 1.0 : std::sinh(e) / e;
        const TemmeGammas g = temme_gammas(xmu);
        double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / g.gampl;
        double q = 0.5 / (e * g.gammi);
        double c = 1.0;
        d = x2 * x2;
        double sum1 = p;
        for (int i = 1; i < kMaxIter; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
            c *= d / i;
            p /= (i - xmu);
            q /= (i + xmu);
            const double del = c * ff;
            sum += del;
            sum1 += c * (p - i * ff);
            if (std::fabs(del) < std::fabs(sum) * kEps) break;
        }
        rkmu = sum;
        ratio = sum1 / sum * xi2;
    } else {
        double b = 2.0 * (1.0 + x);
        double d = 1.0 / b;
        double h = d;
        double delh = d;
        double q1 = 0.0;
        double q2 = 1.0;
        const double a1 = 0.25 - xmu2;
        double q = a1;
        double c = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        for (int i = 2; i < kMaxIter; ++i) {
            a -= 2.0 * (i - 1);
            c = -a * c / i;
            const double qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            const double dels = q * delh;
            s += dels;
            if (std::fabs(dels / s) < kEps) break;
        }
        h = a1 * h;
        rkmu = std::sqrt(std::numbers::pi / (2.0 * x)) / s;  // scaled by e^x
        ratio = (xmu + x + 0.5 - h) * xi;
        log_scale = -x;
    }

    // Upward recurrence on the ratio K_{nu+1} / K_nu, accumulating logs: each step grows
    // by about 2 nu / x, which overflows outright for tiny x.
    double log_k = std::log(rkmu) + log_scale;
    for (int i = 1; i <= nl; ++i) {
        log_k += std::log(ratio);
        ratio = (xmu + i) * xi2 + 1.0 / ratio;
    }
    return log_k;
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be positive, got " + std::to_string(x));
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double gross_weight(int l, int n) {
    if (n < 0 || l < 0 || l > n) throw DomainError("gross_weight: require 0 <= l <= n");
    double w = 1.0;
    const double n2 = static_cast<double>(n) * n;
    for (int j = 1; j < l; ++j) w *= 1.0 - static_cast<double>(j) * j / n2;
    return w;
}

namespace detail {

double log_bessel_i_unchecked(double nu, double x) {
    if (x == 0.0) {
        if (nu == 0.0) return 0.0;
        return nu > 0.0 ? -kInf : kInf;
    }
    if (use_asymptotic(nu, x)) return log_i_asymptotic(nu, x);
    return log_i_series(nu, x, 1e-17);
}

double log_bessel_i_from_log(double nu, double log_x) {
    // Below e^-600 the second series term is smaller than the first by x^2/4 < 1e-500.
    if (log_x < -600.0) return nu * (log_x - std::numbers::ln2) - ln_gamma(nu + 1.0);
    return log_bessel_i_unchecked(nu, std::exp(log_x));
}

}  // namespace detail

namespace {

void check_i_domain(double nu, double x) {
    if (!(nu >= -0.5)) throw DomainError("bessel_i: order must be >= -0.5");
    if (!(x >= 0.0)) throw DomainError("bessel_i: argument must be non-negative");
}

}  // namespace

double log_bessel_i(double nu, double x) {
    check_i_domain(nu, x);
    return detail::log_bessel_i_unchecked(nu, x);
}

double bessel_i(double nu, double x, const BesselMethod& method) {
    check_i_domain(nu, x);
    if (const auto* exact = std::get_if<ExactSeries>(&method)) {
        if (!(exact->tol > 0.0)) throw DomainError("bessel_i: series tolerance must be positive");
        if (x == 0.0) return std::exp(detail::log_bessel_i_unchecked(nu, x));
        if (use_asymptotic(nu, x)) return std::exp(log_i_asymptotic(nu, x));
        return std::exp(log_i_series(nu, x, exact->tol));
    }
    const int n = std::get<GrossPoly>(method).n;
    if (n < 0) throw DomainError("bessel_i: polynomial order must be non-negative");
    if (x == 0.0) return std::exp(detail::log_bessel_i_unchecked(nu, x));
    const double log_half = std::log(0.5 * x);
    double sum = 0.0;
    for (int l = 0; l <= n; ++l) {
        const double log_term = std::log(gross_weight(l, n)) + (nu + 2.0 * l) * log_half -
                                ln_gamma(l + 1.0) - ln_gamma(nu + l + 1.0);
        sum += std::exp(log_term);
    }
    return sum;
}

double bessel_i_scaled(double nu, double x) {
    return std::exp(log_bessel_i(nu, x) - x);
}

double log_bessel_k(double nu, double x) {
    if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive");
    if (!std::isfinite(nu)) throw DomainError("bessel_k: order must be finite");
    if (std::isinf(x)) return -kInf;
    return log_k_nonneg(std::fabs(nu), x);
}

double bessel_k(double nu, double x) {
    return std::exp(log_bessel_k(nu, x));
}

double bessel_k_scaled(double nu, double x) {
    return std::exp(log_bessel_k(nu, x) + x);
}

}  // namespace fading
