#pragma once

#include <functional>
#include <random>

#include "fading/quadrature.hpp"

namespace fading {

/// Random stream owned by exactly one evaluation context.
using RandomStream = std::mt19937_64;

/// kappa-mu multipath parameters. kappa: dominant-to-scattered power ratio,
/// mu: clustering, r_hat: rms envelope sqrt(E[R^2]).
struct KappaMuParams {
    double kappa = 1.0;
    double mu = 1.0;
    double r_hat = 1.0;

    void validate() const;
};

/// kappa-mu Extreme parameter m, the inverse variance of the normalized power.
struct KappaMuExtremeParams {
    double m = 1.0;

    void validate() const;
};

/// Gamma shadowing with shape b and scale omega (mean b * omega).
struct GammaShadowParams {
    double b = 1.0;
    double omega = 1.0;

    void validate() const;
};

/// Pointwise evaluation of a density with a probability atom at zero.
struct MixedValue {
    double atom_weight = 0.0;
    double density = 0.0;
};

/// A distribution on [0, inf) made of an atom at zero plus a continuous part.
struct MixedDensity {
    double atom_weight = 0.0;
    std::function<double(double)> continuous;

    /// Mass of the continuous part, by quadrature.
    QuadResult continuous_mass(const QuadConfig& cfg = {}) const;
};

double kappa_mu_envelope_pdf(double r, const KappaMuParams& p);

/// Power density p_R(sqrt(w)) / (2 sqrt(w)); at w = 0 the analytic limit, which is
/// +inf when mu < 1.
double kappa_mu_power_pdf(double w, const KappaMuParams& p);

/// m = mu (1 + kappa)^2 / (1 + 2 kappa).
double nakagami_m_equivalent(double kappa, double mu);

/// mu = (E^2[R^2] / Var[R^2]) (1 + 2 kappa) / (1 + kappa)^2.
double mu_from_moments(double mean_power, double var_power, double kappa);

/// Normalized envelope rho = r / r_hat: atom e^{-2m} plus 4m I_1(4m rho) e^{-2m(1 + rho^2)}.
MixedValue kappa_mu_extreme_pdf(double rho, const KappaMuExtremeParams& p);

/// y^{b-1} e^{-y/omega} / (Gamma(b) omega^b). At y = 0 this is +inf for b < 1.
double gamma_shadow_pdf(double y, const GammaShadowParams& p);

MixedDensity kappa_mu_density(const KappaMuParams& p);
MixedDensity kappa_mu_extreme_density(const KappaMuExtremeParams& p);
MixedDensity gamma_shadow_density(const GammaShadowParams& p);

/// R^2 = r_hat^2 G / (mu (1 + kappa)), G ~ Gamma(mu + P), P ~ Poisson(mu kappa).
double sample_kappa_mu(const KappaMuParams& p, RandomStream& stream);

/// Normalized envelope: P ~ Poisson(2m); 0 when P = 0, else sqrt(G / (2m)) with
/// G ~ Gamma(P).
double sample_kappa_mu_extreme(const KappaMuExtremeParams& p, RandomStream& stream);

double sample_gamma_shadow(const GammaShadowParams& p, RandomStream& stream);

namespace detail {

// Unit-rms log densities as functions of log(rho), rho = r / r_hat; the density at rms
// r_hat is the unit-rms one minus log(r_hat). Working from log(rho) keeps shadowing
// integrands finite when r_hat under- or overflows.
double log_kappa_mu_std_pdf(double log_rho, double kappa, double mu);
double log_kappa_mu_extreme_std_pdf(double log_rho, double m);

// log of the kappa-mu envelope density for r > 0; mu may be below 1/2 here.
double log_kappa_mu_envelope_pdf(double r, double kappa, double mu, double r_hat);

// log of the continuous Extreme density in r at rms r_hat, r > 0.
double log_kappa_mu_extreme_envelope_pdf(double r, double m, double r_hat);

double log_gamma_shadow_pdf(double y, double b, double omega);

}  // namespace detail

}  // namespace fading
