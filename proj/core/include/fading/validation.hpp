#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fading/base_models.hpp"
#include "fading/composite.hpp"
#include "fading/quadrature.hpp"

namespace fading {

/// Kolmogorov-Smirnov distance of the positive samples against the continuous part,
/// plus a binomial test of the fraction of exact zeros against the atom.
struct GoFReport {
    double ks_distance = 0.0;
    std::size_t n_samples = 0;
    std::size_t n_positive = 0;
    double atom_expected = 0.0;
    double atom_observed = 0.0;
    double atom_sigma = 0.0;  // binomial standard deviation of the zero fraction
    double threshold = 0.0;
    bool pass = false;
};

inline constexpr std::size_t kMinGoFSamples = 10000;

/// KS acceptance threshold: 0.002 at 10^6 samples, scaled as 1/sqrt(n).
double ks_threshold_for(std::size_t n_samples);

/// Draws Y from the shadowing density, maps it to the conditional rms and draws the
/// envelope from the multipath sampler.
double sample_composite(const CompositeSpec& spec, RandomStream& stream);

std::vector<double> sample_composite_many(const CompositeSpec& spec, std::size_t count, RandomStream& stream);

/// P(X <= x): the atom plus the integral of the continuous part over [0, x].
double composite_cdf_numeric(double x, const CompositeSpec& spec, const QuadConfig& cfg = {});

/// E[X^k] by nested quadrature (the atom contributes nothing). k = 0 yields the mass
/// of the continuous part, P(X > 0).
double moment_numeric(const CompositeSpec& spec, int k, const QuadConfig& cfg = {});

/// E[R^k] of the multipath conditional at rms r_hat, by quadrature.
double conditional_moment_numeric(const Multipath& mp, double r_hat, int k, const QuadConfig& cfg = {});

/// E[X^k] as the shadowing average of conditional moments, each by quadrature.
double tower_moment_numeric(const CompositeSpec& spec, int k, const QuadConfig& cfg = {});

/// Analytic E[X^2] of the composite: E[r_hat(Y)^2].
double composite_mean_power(const CompositeSpec& spec);

/// Tabulated CDF of a mixed density on [0, x_max], built from pdf values at the nodes
/// and per-cell quadrature, with cubic Hermite interpolation inside cells.
class CdfTable {
public:
    /// `scale` is a typical magnitude of the variate (e.g. its rms); it sets the
    /// initial range and grid spacing.
    CdfTable(const MixedDensity& density, double scale, const QuadConfig& cfg = {}, std::size_t cells = 2048);

    /// P(X <= x) including the atom.
    double operator()(double x) const;

    /// P(X <= x | X > 0).
    double conditional_positive(double x) const;

    double x_max() const { return x_max_; }
    double tail_mass() const { return tail_; }
    double atom() const { return atom_; }

private:
    double continuous_cdf(double x) const;

    MixedDensity density_;
    QuadConfig cfg_;
    double atom_ = 0.0;
    double x_max_ = 0.0;
    double step_ = 0.0;
    double tail_ = 0.0;
    std::vector<double> pdf_;
    std::vector<double> cum_;
};

GoFReport goodness_of_fit(std::span<const double> samples, const CdfTable& cdf, double threshold);

/// Composite samples against the quadrature oracle.
GoFReport goodness_of_fit(std::span<const double> samples, const CompositeSpec& spec, const QuadConfig& cfg = {},
                          double threshold = -1.0);

/// Samples against an arbitrary mixed density with the given scale.
GoFReport goodness_of_fit(std::span<const double> samples, const MixedDensity& density, double scale,
                          const QuadConfig& cfg = {}, double threshold = -1.0);

}  // namespace fading
