#include "fading/base_models.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fading/special_fns.hpp"

namespace fading {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
}

// p_R(r) ~ L r^{2 mu - 1} as r -> 0; returns log L.
double log_origin_coefficient(const KappaMuParams& p) {
    return std::log(2.0) + p.mu * std::log(p.mu) + p.mu * std::log1p(p.kappa) - p.mu * p.kappa -
           ln_gamma(p.mu) - 2.0 * p.mu * std::log(p.r_hat);
}

}  // namespace

void KappaMuParams::validate() const {
    require_positive(kappa, "kappa");
    require_positive(mu, "mu");
    require_positive(r_hat, "r_hat");
}

void KappaMuExtremeParams::validate() const { require_positive(m, "m"); }

void GammaShadowParams::validate() const {
    require_positive(b, "b");
    require_positive(omega, "omega");
}

QuadResult MixedDensity::continuous_mass(const QuadConfig& cfg) const {
    return integrate_semi_infinite(continuous, cfg);
}

namespace detail {

double log_kappa_mu_std_pdf(double log_rho, double kappa, double mu) {
    // Beyond rho^2 = e^700 the Gaussian factor is far below the double range.
    if (log_rho > 350.0) return -kInf;
    const double rho = std::exp(log_rho);
    const double log_z = std::log(2.0 * mu * std::sqrt(kappa * (1.0 + kappa))) + log_rho;
    return std::log(2.0 * mu) + 0.5 * (mu + 1.0) * std::log1p(kappa) - 0.5 * (mu - 1.0) * std::log(kappa) -
           mu * kappa + mu * log_rho - mu * (1.0 + kappa) * rho * rho + log_bessel_i_from_log(mu - 1.0, log_z);
}

double log_kappa_mu_extreme_std_pdf(double log_rho, double m) {
    if (log_rho > 350.0) return -kInf;
    const double rho = std::exp(log_rho);
    return std::log(4.0 * m) + log_bessel_i_from_log(1.0, std::log(4.0 * m) + log_rho) - 2.0 * m * (1.0 + rho * rho);
}

double log_kappa_mu_envelope_pdf(double r, double kappa, double mu, double r_hat) {
    const double log_r_hat = std::log(r_hat);
    return log_kappa_mu_std_pdf(std::log(r) - log_r_hat, kappa, mu) - log_r_hat;
}

double log_kappa_mu_extreme_envelope_pdf(double r, double m, double r_hat) {
    const double log_r_hat = std::log(r_hat);
    return log_kappa_mu_extreme_std_pdf(std::log(r) - log_r_hat, m) - log_r_hat;
}

double log_gamma_shadow_pdf(double y, double b, double omega) {
    return (b - 1.0) * std::log(y) - y / omega - ln_gamma(b) - b * std::log(omega);
}

}  // namespace detail

double kappa_mu_envelope_pdf(double r, const KappaMuParams& p) {
    p.validate();
    if (!(r >= 0.0)) throw DomainError("kappa_mu_envelope_pdf: envelope must be non-negative");
    if (std::isinf(r)) return 0.0;
    if (r == 0.0) {
        if (p.mu > 0.5) return 0.0;
        if (p.mu < 0.5) return kInf;
        return std::exp(log_origin_coefficient(p));
    }
    return std::exp(detail::log_kappa_mu_envelope_pdf(r, p.kappa, p.mu, p.r_hat));
}

double kappa_mu_power_pdf(double w, const KappaMuParams& p) {
    p.validate();
    if (!(w >= 0.0)) throw DomainError("kappa_mu_power_pdf: power must be non-negative");
    if (std::isinf(w)) return 0.0;
    if (w == 0.0) {
        if (p.mu > 1.0) return 0.0;
        if (p.mu < 1.0) return kInf;
        return 0.5 * std::exp(log_origin_coefficient(p));
    }
    const double r = std::sqrt(w);
    return std::exp(detail::log_kappa_mu_envelope_pdf(r, p.kappa, p.mu, p.r_hat)) / (2.0 * r);
}

double nakagami_m_equivalent(double kappa, double mu) {
    require_positive(kappa, "kappa");
    require_positive(mu, "mu");
    return mu * (1.0 + kappa) * (1.0 + kappa) / (1.0 + 2.0 * kappa);
}

double mu_from_moments(double mean_power, double var_power, double kappa) {
    require_positive(mean_power, "mean_power");
    if (var_power == 0.0) throw DomainError("mu_from_moments: power variance must be non-zero");
    require_positive(var_power, "var_power");
    require_positive(kappa, "kappa");
    return mean_power * mean_power / var_power * (1.0 + 2.0 * kappa) / ((1.0 + kappa) * (1.0 + kappa));
}

MixedValue kappa_mu_extreme_pdf(double rho, const KappaMuExtremeParams& p) {
    p.validate();
    if (!(rho >= 0.0)) throw DomainError("kappa_mu_extreme_pdf: envelope must be non-negative");
    MixedValue v{std::exp(-2.0 * p.m), 0.0};
    if (rho > 0.0 && std::isfinite(rho)) v.density = std::exp(detail::log_kappa_mu_extreme_envelope_pdf(rho, p.m, 1.0));
    return v;
}

double gamma_shadow_pdf(double y, const GammaShadowParams& p) {
    p.validate();
    if (!(y >= 0.0)) throw DomainError("gamma_shadow_pdf: argument must be non-negative");
    if (std::isinf(y)) return 0.0;
    if (y == 0.0) {
        if (p.b < 1.0) return kInf;
        return p.b == 1.0 ? 1.0 / p.omega : 0.0;
    }
    return std::exp(detail::log_gamma_shadow_pdf(y, p.b, p.omega));
}

MixedDensity kappa_mu_density(const KappaMuParams& p) {
    p.validate();
    return {0.0, [p](double r) { return kappa_mu_envelope_pdf(r, p); }};
}

MixedDensity kappa_mu_extreme_density(const KappaMuExtremeParams& p) {
    p.validate();
    return {std::exp(-2.0 * p.m), [p](double rho) { return kappa_mu_extreme_pdf(rho, p).density; }};
}

MixedDensity gamma_shadow_density(const GammaShadowParams& p) {
    p.validate();
    return {0.0, [p](double y) { return gamma_shadow_pdf(y, p); }};
}

double sample_kappa_mu(const KappaMuParams& p, RandomStream& stream) {
    std::poisson_distribution<long long> clusters(p.mu * p.kappa);
    const long long extra = clusters(stream);
    std::gamma_distribution<double> power(p.mu + static_cast<double>(extra), 1.0);
    return p.r_hat * std::sqrt(power(stream) / (p.mu * (1.0 + p.kappa)));
}

double sample_kappa_mu_extreme(const KappaMuExtremeParams& p, RandomStream& stream) {
    std::poisson_distribution<long long> paths(2.0 * p.m);
    const long long count = paths(stream);
    if (count == 0) return 0.0;
    std::gamma_distribution<double> power(static_cast<double>(count), 1.0);
    return std::sqrt(power(stream) / (2.0 * p.m));
}

double sample_gamma_shadow(const GammaShadowParams& p, RandomStream& stream) {
    std::gamma_distribution<double> shadow(p.b, p.omega);
    return shadow(stream);
}

}  // namespace fading
