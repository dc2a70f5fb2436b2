#pragma once

#include <string>
#include <variant>

#include "fading/base_models.hpp"
#include "fading/quadrature.hpp"

namespace fading {

/// How the gamma shadowing variate Y sets the rms r_hat of the multipath conditional.
enum class Compounding {
    mean_square,       // r_hat = Y
    root_mean_square,  // r_hat = sqrt(Y), i.e. Y is the mean power
};

/// kappa-mu multipath shape; the rms is supplied by the shadowing draw.
struct KappaMuShape {
    double kappa = 1.0;
    double mu = 1.0;
};

using Multipath = std::variant<KappaMuShape, KappaMuExtremeParams>;

struct CompositeSpec {
    Multipath multipath = KappaMuShape{};
    GammaShadowParams shadow{};
    Compounding compounding = Compounding::root_mean_square;

    void validate() const;
    bool is_extreme() const { return std::holds_alternative<KappaMuExtremeParams>(multipath); }
};

std::string to_string(const CompositeSpec& spec);

CompositeSpec kappa_mu_gamma(double kappa, double mu, double b, double omega,
                             Compounding c = Compounding::root_mean_square);
CompositeSpec kmu_extreme_gamma(double m, double b, double omega,
                                Compounding c = Compounding::root_mean_square);

/// literal: term-by-term assembly of the closed-form series exactly as derived from the
/// unscaled conditional (orders b - mu - l + 1/2 and b - l - 1/2), with the printed
/// normalization constant reported as the atom where one exists.
/// renormalized: series assembled from the unit-mass conditional (orders b - mu - l and
/// b - l - 1) and scaled so the continuous part carries exactly its target mass.
enum class SeriesMode { literal, renormalized };

struct SeriesConfig {
    int n = 30;
    SeriesMode mode = SeriesMode::renormalized;

    void validate() const;
};

/// Exponent convention of the y-integral inside each series term.
enum class TermConvention {
    printed,              // y^{b-mu-l-1/2} (kappa-mu), y^{b-l-3/2} (Extreme)
    dimension_corrected,  // y^{b-mu-l-1}, y^{b-l-2}: the unit-mass conditional
};

enum class TermMethod { closed_form, numeric };

/// r_hat of the conditional for a shadowing value y.
double conditional_rms(double y, Compounding c);

/// Continuous density of the multipath conditional at envelope x for rms r_hat.
double conditional_envelope_pdf(double x, const Multipath& mp, double r_hat);

/// Ground truth: atom plus the compound integral over the shadowing density.
MixedValue composite_envelope_pdf_numeric(double x, const CompositeSpec& spec, const QuadConfig& cfg = {});

/// Power density of the composite for w > 0, p_X(sqrt(w)) / (2 sqrt(w)); same atom.
MixedValue composite_power_pdf_numeric(double w, const CompositeSpec& spec, const QuadConfig& cfg = {});

MixedDensity composite_density(const CompositeSpec& spec, const QuadConfig& cfg = {});

/// Rayleigh/gamma compound with Y the mean power:
/// 4 x^b K_{b-1}(2x / sqrt(omega)) / (Gamma(b) omega^{(b+1)/2}).
double k_distribution_pdf(double x, double b, double omega);

/// Closed form of int_0^inf y^{nu-1} e^{-beta/y} e^{-gamma y} dy
/// = 2 (beta/gamma)^{nu/2} K_nu(2 sqrt(beta gamma)) for beta, gamma > 0.
double inverse_gamma_kernel_integral(double nu, double beta, double gamma);
double log_inverse_gamma_kernel_integral(double nu, double beta, double gamma);

/// The y-integral of the l-th series term at envelope x:
/// kappa-mu: int y^{p} e^{-mu(1+kappa) x^2 / y} e^{-y/omega} dy,
/// Extreme:  int y^{p} e^{-2m x^2 / y} e^{-y/omega} dy,
/// with p fixed by the convention. At x = 0 this is Gamma(p+1) omega^{p+1}, or +inf
/// when p <= -1.
double series_term_integral(int l, double x, const CompositeSpec& spec, TermMethod method,
                            TermConvention convention = TermConvention::printed, const QuadConfig& cfg = {});

/// Continuous part of the kappa-mu/gamma series (root_mean_square compounding only).
double kappa_mu_gamma_envelope_pdf_series(double x, const CompositeSpec& spec, const SeriesConfig& sc = {});
double kappa_mu_gamma_power_pdf_series(double w, const CompositeSpec& spec, const SeriesConfig& sc = {});

MixedValue kmu_extreme_gamma_envelope_pdf_series(double x, const CompositeSpec& spec, const SeriesConfig& sc = {});
MixedValue kmu_extreme_gamma_power_pdf_series(double w, const CompositeSpec& spec, const SeriesConfig& sc = {});

/// Dispatches on the multipath model.
MixedValue envelope_pdf_series(double x, const CompositeSpec& spec, const SeriesConfig& sc = {});

/// Series value at x = 0 as the limit x -> 0+ (0, finite, or +inf).
MixedValue envelope_pdf_series_at_origin(const CompositeSpec& spec, const SeriesConfig& sc = {});

/// Normalization bookkeeping of the truncated series.
struct SeriesNormalization {
    double printed_S = 0.0;           // closed-form constant as printed
    double measured_S = 0.0;          // 1 - atom - int(unit-mass raw series), by quadrature
    double measured_S_literal = 0.0;  // 1 - atom - int(literal series), by quadrature
    double analytic_mass = 0.0;       // exact mass of the unit-mass raw series
    double atom = 0.0;                // 0 for kappa-mu, e^{-2m} for Extreme
};

/// kappa-mu/gamma: printed S and its quadrature counterpart S' = 1 - int(series).
SeriesNormalization series_atom_S(const CompositeSpec& spec, const SeriesConfig& sc = {}, const QuadConfig& cfg = {});

/// Extreme/gamma: printed S versus 1 - e^{-2m} - int(series).
SeriesNormalization extreme_series_atom_S(const CompositeSpec& spec, const SeriesConfig& sc = {},
                                          const QuadConfig& cfg = {});

/// Exact mass of the raw (unit-mass conditional) series continuous part:
/// e^{-mu kappa} sum_l w_l (mu kappa)^l / l!  or  e^{-2m} sum_l w_l (2m)^{l+1} / (l+1)!.
double series_raw_mass(const CompositeSpec& spec, int n);

/// Fully assembled closed forms with S substituted back in, evaluated as printed.
/// These are not densities; they exist to measure the gap to the oracle.
double printed_assembled_envelope(double x, const CompositeSpec& spec, int n);

}  // namespace fading
