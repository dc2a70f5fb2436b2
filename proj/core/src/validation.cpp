#include "fading/validation.hpp"

#include "fading/special_fns.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fading {

namespace {

constexpr std::array<double, 5> kGlNodes = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                            0.9061798459386640};
constexpr std::array<double, 5> kGlWeights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                              0.4786286704993665, 0.2369268850561891};
constexpr double kTailTarget = 1e-9;

double gauss_legendre5(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < kGlNodes.size(); ++i) s += kGlWeights[i] * f(c + h * kGlNodes[i]);
    return s * h;
}

void require_finite_value(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

// x^k p with p = 0 winning over an overflowing power far in the tail.
double power_weighted(double x, int k, double p) { return p == 0.0 ? 0.0 : std::pow(x, k) * p; }

void require_enough_samples(std::size_t n) {
    if (n < kMinGoFSamples)
        throw std::invalid_argument("goodness_of_fit requires at least " + std::to_string(kMinGoFSamples) +
                                    " samples, got " + std::to_string(n));
}

}  // namespace

double ks_threshold_for(std::size_t n_samples) {
    if (n_samples == 0) throw std::invalid_argument("ks_threshold_for: no samples");
    return 0.002 * std::sqrt(1e6 / static_cast<double>(n_samples));
}

double sample_composite(const CompositeSpec& spec, RandomStream& stream) {
    const double y = sample_gamma_shadow(spec.shadow, stream);
    const double r_hat = conditional_rms(y, spec.compounding);
    if (const auto* km = std::get_if<KappaMuShape>(&spec.multipath)) {
        return sample_kappa_mu(KappaMuParams{km->kappa, km->mu, r_hat}, stream);
    }
    return r_hat * sample_kappa_mu_extreme(std::get<KappaMuExtremeParams>(spec.multipath), stream);
}

std::vector<double> sample_composite_many(const CompositeSpec& spec, std::size_t count, RandomStream& stream) {
    spec.validate();
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample_composite(spec, stream));
    return out;
}

double composite_cdf_numeric(double x, const CompositeSpec& spec, const QuadConfig& cfg) {
    const MixedDensity d = composite_density(spec, cfg);
    if (!(x >= 0.0)) throw DomainError("composite_cdf_numeric: envelope must be non-negative");
    if (x == 0.0) return d.atom_weight;
    if (std::isinf(x)) return 1.0;
    std::ostringstream ctx;
    ctx << "cdf at x=" << x << ", " << to_string(spec);
    const double part = require_converged(integrate_finite(d.continuous, 0.0, x, cfg), ctx.str());
    return std::clamp(d.atom_weight + part, 0.0, 1.0);
}

double moment_numeric(const CompositeSpec& spec, int k, const QuadConfig& cfg) {
    if (k < 0) throw std::invalid_argument("moment order must be non-negative");
    const MixedDensity d = composite_density(spec, cfg);
    const QuadResult r = integrate_semi_infinite(
        [&](double x) { return power_weighted(x, k, d.continuous(x)); }, cfg);
    return require_converged(r, "moment k=" + std::to_string(k) + ", " + to_string(spec));
}

double conditional_moment_numeric(const Multipath& mp, double r_hat, int k, const QuadConfig& cfg) {
    if (k < 0) throw std::invalid_argument("moment order must be non-negative");
    if (!(r_hat > 0.0)) throw std::invalid_argument("r_hat must be positive");
    const QuadResult r = integrate_semi_infinite(
        [&](double x) { return power_weighted(x, k, conditional_envelope_pdf(x, mp, r_hat)); }, cfg);
    return require_converged(r, "conditional moment");
}

double tower_moment_numeric(const CompositeSpec& spec, int k, const QuadConfig& cfg) {
    spec.validate();
    // E[R^k | r_hat] = r_hat^k E[R^k | 1]; the unit moment is integrated once.
    const double unit = conditional_moment_numeric(spec.multipath, 1.0, k, cfg);
    const QuadResult r = integrate_semi_infinite(
        [&](double y) {
            const double g = gamma_shadow_pdf(y, spec.shadow);
            if (g == 0.0) return 0.0;
            return g * std::pow(conditional_rms(y, spec.compounding), k) * unit;
        },
        cfg);
    return require_converged(r, "tower moment, " + to_string(spec));
}

double composite_mean_power(const CompositeSpec& spec) {
    spec.validate();
    const double b = spec.shadow.b;
    const double omega = spec.shadow.omega;
    return spec.compounding == Compounding::root_mean_square ? b * omega : b * (b + 1.0) * omega * omega;
}

CdfTable::CdfTable(const MixedDensity& density, double scale, const QuadConfig& cfg, std::size_t cells)
    : density_(density), cfg_(cfg), atom_(density.atom_weight) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("CdfTable: scale must be positive");
    if (cells < 16) throw std::invalid_argument("CdfTable: need at least 16 cells");
    const auto& f = density_.continuous;

    QuadConfig tail_cfg = cfg_;
    tail_cfg.abs_tol = std::min(cfg_.abs_tol, 1e-12);
    x_max_ = 10.0 * scale;
    for (;;) {
        const double start = x_max_;
        tail_ = integrate_semi_infinite([&](double t) { return f(start + t); }, tail_cfg).value;
        if (tail_ <= kTailTarget || x_max_ > 1e6 * scale) break;
        x_max_ *= 1.5;
    }

    step_ = x_max_ / static_cast<double>(cells);
    pdf_.resize(cells + 1);
    cum_.assign(cells + 1, 0.0);
    for (std::size_t i = 0; i <= cells; ++i) pdf_[i] = f(step_ * static_cast<double>(i));
    for (std::size_t i = 0; i < cells; ++i) {
        const double a = step_ * static_cast<double>(i);
        const double b = a + step_;
        double mass = 0.0;
        if (std::isfinite(pdf_[i]) && std::isfinite(pdf_[i + 1]) && i > 0) {
            mass = gauss_legendre5(f, a, b);
        } else {
            mass = require_converged(integrate_finite(f, a, b, cfg_), "cdf table cell");
        }
        cum_[i + 1] = cum_[i] + mass;
    }
}

double CdfTable::continuous_cdf(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= x_max_) return cum_.back();
    const auto i = std::min(static_cast<std::size_t>(x / step_), pdf_.size() - 2);
    const double a = step_ * static_cast<double>(i);
    const double f0 = pdf_[i];
    const double f1 = pdf_[i + 1];
    if (!std::isfinite(f0) || !std::isfinite(f1) || i == 0) {
        return cum_[i] + require_converged(integrate_finite(density_.continuous, a, x, cfg_), "cdf table lookup");
    }
    const double t = (x - a) / step_;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * cum_[i] + h10 * step_ * f0 + h01 * cum_[i + 1] + h11 * step_ * f1;
}

double CdfTable::operator()(double x) const {
    return std::clamp(atom_ + continuous_cdf(x), 0.0, 1.0);
}

double CdfTable::conditional_positive(double x) const {
    if (atom_ >= 1.0) throw std::domain_error("CdfTable: no continuous part");
    return std::clamp(continuous_cdf(x) / (1.0 - atom_), 0.0, 1.0);
}

GoFReport goodness_of_fit(std::span<const double> samples, const CdfTable& cdf, double threshold) {
    require_enough_samples(samples.size());
    GoFReport rep;
    rep.n_samples = samples.size();
    rep.threshold = threshold > 0.0 ? threshold : ks_threshold_for(samples.size());
    rep.atom_expected = cdf.atom();

    std::vector<double> positive;
    positive.reserve(samples.size());
    std::size_t zeros = 0;
    for (double s : samples) {
        if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("goodness_of_fit: samples must be finite and non-negative");
        if (s == 0.0) {
            ++zeros;
        } else {
            positive.push_back(s);
        }
    }
    if (positive.empty()) throw std::invalid_argument("goodness_of_fit: no positive samples to test");
    rep.n_positive = positive.size();
    const double n = static_cast<double>(samples.size());
    rep.atom_observed = static_cast<double>(zeros) / n;
    rep.atom_sigma = std::sqrt(rep.atom_expected * (1.0 - rep.atom_expected) / n);

    std::sort(positive.begin(), positive.end());
    const double np = static_cast<double>(positive.size());
    double d = 0.0;
    for (std::size_t i = 0; i < positive.size(); ++i) {
        const double f = cdf.conditional_positive(positive[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / np - f, f - static_cast<double>(i) / np});
    }
    rep.ks_distance = d;
    const bool atom_ok = std::fabs(rep.atom_observed - rep.atom_expected) <= 3.0 * rep.atom_sigma;
    rep.pass = rep.ks_distance <= rep.threshold && atom_ok;
    return rep;
}

GoFReport goodness_of_fit(std::span<const double> samples, const CompositeSpec& spec, const QuadConfig& cfg,
                          double threshold) {
    require_enough_samples(samples.size());
    const CdfTable table(composite_density(spec, cfg), std::sqrt(composite_mean_power(spec)), cfg);
    return goodness_of_fit(samples, table, threshold);
}

GoFReport goodness_of_fit(std::span<const double> samples, const MixedDensity& density, double scale,
                          const QuadConfig& cfg, double threshold) {
    require_finite_value(scale, "scale");
    require_enough_samples(samples.size());
    const CdfTable table(density, scale, cfg);
    return goodness_of_fit(samples, table, threshold);
}

}  // namespace fading
