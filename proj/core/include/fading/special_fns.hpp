#pragma once

#include <stdexcept>
#include <string>
#include <variant>

namespace fading {

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Power series of I_nu, summed until the next term contributes less than `tol`
/// relative to the running sum.
struct ExactSeries {
    double tol = 1e-17;
};

/// Finite polynomial approximation of I_nu with n + 1 terms whose l-th term carries
/// the weight Gamma(n + l) n^(1 - 2l) / Gamma(n - l + 1). The weights tend to one as
/// n grows, so the polynomial reduces to the power series in the limit.
struct GrossPoly {
    int n = 30;
};

using BesselMethod = std::variant<ExactSeries, GrossPoly>;

/// Natural log of the gamma function for x > 0.
double ln_gamma(double x);

/// Weight Gamma(n + l) n^(1 - 2l) / Gamma(n - l + 1) of the l-th term of the
/// polynomial approximation, 0 <= l <= n. Equals prod_{j=1}^{l-1} (1 - j^2 / n^2),
/// and is 1 for l = 0 (including the degenerate n = 0 expansion).
double gross_weight(int l, int n);

/// Modified Bessel function of the first kind I_nu(x), nu >= -1/2, x >= 0.
double bessel_i(double nu, double x, const BesselMethod& method = ExactSeries{});

/// log I_nu(x) evaluated without overflow. Same domain as bessel_i with the exact
/// series; returns -inf where I_nu(x) = 0.
double log_bessel_i(double nu, double x);

/// e^{-x} I_nu(x).
double bessel_i_scaled(double nu, double x);

/// Modified Bessel function of the second kind K_nu(x) for any real nu and x > 0.
double bessel_k(double nu, double x);

/// log K_nu(x), safe for large orders at small arguments and for large arguments.
double log_bessel_k(double nu, double x);

/// e^{x} K_nu(x).
double bessel_k_scaled(double nu, double x);

namespace detail {

// log I_nu(x) for any nu > -1. The public entry points restrict nu to >= -1/2.
double log_bessel_i_unchecked(double nu, double x);

// Same, from log x; arguments below the double range use the leading series term.
double log_bessel_i_from_log(double nu, double log_x);

}  // namespace detail

}  // namespace fading
