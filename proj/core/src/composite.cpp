#include "fading/composite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fading/special_fns.hpp"

namespace fading {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& logs) {
    double top = -kInf;
    for (double v : logs) top = std::max(top, v);
    if (!std::isfinite(top)) return top;
    double s = 0.0;
    for (double v : logs) s += std::exp(v - top);
    return top + std::log(s);
}

const KappaMuShape& kappa_mu_of(const CompositeSpec& spec) {
    const auto* km = std::get_if<KappaMuShape>(&spec.multipath);
    if (km == nullptr) throw std::invalid_argument("operation requires a kappa-mu/gamma spec");
    return *km;
}

const KappaMuExtremeParams& extreme_of(const CompositeSpec& spec) {
    const auto* ex = std::get_if<KappaMuExtremeParams>(&spec.multipath);
    if (ex == nullptr) throw std::invalid_argument("operation requires a kappa-mu Extreme/gamma spec");
    return *ex;
}

void require_rms_compounding(const CompositeSpec& spec) {
    if (spec.compounding != Compounding::root_mean_square)
        throw std::invalid_argument("the closed-form series is defined for root_mean_square compounding only");
}

double atom_of(const CompositeSpec& spec) {
    return spec.is_extreme() ? std::exp(-2.0 * extreme_of(spec).m) : 0.0;
}

// Parameters of the l-th series term written as C_l x^{px} * J(x), where
// J(x) = int y^{nu-1} e^{-beta x^2 / y} e^{-y/omega} dy.
struct TermShape {
    double log_coef;
    double px;
    double nu;
    double beta;
};

// Coefficients common to both exponent conventions: they come from expanding the
// Bessel-I factor of the conditional and collecting the x- and y-independent parts.
TermShape term_shape(int l, int n, const CompositeSpec& spec, TermConvention conv) {
    const double b = spec.shadow.b;
    const double omega = spec.shadow.omega;
    const double log_w = std::log(gross_weight(l, n));
    if (const auto* km = std::get_if<KappaMuShape>(&spec.multipath)) {
        const double kappa = km->kappa;
        const double mu = km->mu;
        TermShape t{};
        t.log_coef = std::log(2.0) + (mu + 2.0 * l) * std::log(mu) + (mu + l) * std::log1p(kappa) +
                     l * std::log(kappa) + log_w - ln_gamma(l + 1.0) - ln_gamma(mu + l) - mu * kappa -
                     ln_gamma(b) - b * std::log(omega);
        t.px = 2.0 * mu + 2.0 * l - 1.0;
        t.nu = conv == TermConvention::printed ? b - mu - l + 0.5 : b - mu - l;
        t.beta = mu * (1.0 + kappa);
        return t;
    }
    const double m = extreme_of(spec).m;
    TermShape t{};
    t.log_coef = -2.0 * m + 2.0 * (l + 1.0) * std::log(m) + log_w + (2.0 * l + 3.0) * std::numbers::ln2 -
                 ln_gamma(l + 1.0) - ln_gamma(l + 2.0) - ln_gamma(b) - b * std::log(omega);
    t.px = 1.0 + 2.0 * l;
    t.nu = conv == TermConvention::printed ? b - l - 0.5 : b - l - 1.0;
    t.beta = 2.0 * m;
    return t;
}

// log of 2 (beta/gamma)^{nu/2} K_nu(2 sqrt(beta gamma)) from log beta, so beta may underflow.
double log_kernel_from_log_beta(double nu, double log_beta, double log_gamma) {
    const double log_arg = std::numbers::ln2 + 0.5 * (log_beta + log_gamma);
    double log_k = 0.0;
    if (log_arg < -600.0) {
        // Small-argument limit of K_nu.
        const double a = std::fabs(nu);
        log_k = a > 0.0 ? ln_gamma(a) + a * (std::numbers::ln2 - log_arg) - std::numbers::ln2
                        : std::log(std::numbers::ln2 - log_arg - std::numbers::egamma);
    } else {
        log_k = log_bessel_k(nu, std::exp(log_arg));
    }
    return std::numbers::ln2 + 0.5 * nu * (log_beta - log_gamma) + log_k;
}

double log_term(const TermShape& t, double x, double omega) {
    const double log_x = std::log(x);
    return t.log_coef + t.px * log_x + log_kernel_from_log_beta(t.nu, std::log(t.beta) + 2.0 * log_x, -std::log(omega));
}

double checked_term(double v, int l) {
    if (std::isnan(v) || v == kInf) throw std::runtime_error("series term l=" + std::to_string(l) + " is not finite");
    return v;
}

// Sum of the unit-mass-conditional series terms (continuous part, not rescaled).
double raw_series(double x, const CompositeSpec& spec, int n) {
    std::vector<double> logs;
    logs.reserve(n + 1);
    for (int l = 0; l <= n; ++l) {
        const TermShape t = term_shape(l, n, spec, TermConvention::dimension_corrected);
        logs.push_back(checked_term(log_term(t, x, spec.shadow.omega), l));
    }
    return std::exp(log_sum_exp(logs));
}

// Literal kappa-mu/gamma term assembly with the closed-form coefficients written out.
double literal_kappa_mu_series(double x, const CompositeSpec& spec, int n) {
    const auto& km = kappa_mu_of(spec);
    const double kappa = km.kappa;
    const double mu = km.mu;
    const double b = spec.shadow.b;
    const double omega = spec.shadow.omega;
    const double arg = 2.0 * x * std::sqrt(mu * (1.0 + kappa) / omega);
    std::vector<double> logs;
    for (int l = 0; l <= n; ++l) {
        const double order = b - mu - l + 0.5;
        const double v = std::log(4.0) + std::log(gross_weight(l, n)) +
                         ((mu + 3.0 * l + b) / 2.0 + 0.25) * std::log(mu) + l * std::log(kappa) +
                         ((mu + b + l) / 2.0 + 0.25) * std::log1p(kappa) - ln_gamma(l + 1.0) -
                         ln_gamma(mu + l) - mu * kappa - ln_gamma(b) -
                         ((b + mu + l) / 2.0 - 0.25) * std::log(omega) + (mu + l + b - 0.5) * std::log(x) +
                         log_bessel_k(order, arg);
        logs.push_back(checked_term(v, l));
    }
    return std::exp(log_sum_exp(logs));
}

// Literal Extreme/gamma continuous part: e^{-2m} times the closed-form summand.
double literal_extreme_series(double x, const CompositeSpec& spec, int n) {
    const double m = extreme_of(spec).m;
    const double b = spec.shadow.b;
    const double omega = spec.shadow.omega;
    const double arg = 2.0 * x * std::sqrt(2.0 * m / omega);
    std::vector<double> logs;
    for (int l = 0; l <= n; ++l) {
        const double v = -2.0 * m + std::log(gross_weight(l, n)) +
                         ((b + 3.0 * l) / 2.0 + 3.75) * std::numbers::ln2 +
                         ((b + 3.0 * l) / 2.0 + 1.75) * std::log(m) - ln_gamma(l + 1.0) - ln_gamma(l + 2.0) -
                         ln_gamma(b) - ((b + l) / 2.0 + 0.25) * std::log(omega) + (b + l + 0.5) * std::log(x) +
                         log_bessel_k(b - l - 0.5, arg);
        logs.push_back(checked_term(v, l));
    }
    return std::exp(log_sum_exp(logs));
}

double printed_S_kappa_mu(const CompositeSpec& spec, int n) {
    const auto& km = kappa_mu_of(spec);
    const double kappa = km.kappa;
    const double mu = km.mu;
    double sum = 0.0;
    for (int l = 0; l <= n; ++l) {
        sum += std::exp(std::log(gross_weight(l, n)) + l * std::log(kappa) + 0.5 * std::log(spec.shadow.omega) +
                        (l + 0.5) * std::log(mu) + ln_gamma(mu + 0.5) - ln_gamma(l + 1.0) - mu * kappa -
                        ln_gamma(spec.shadow.b) - 0.25 * std::numbers::ln2);
    }
    return 1.0 - sum;
}

double printed_S_extreme(const CompositeSpec& spec, int n) {
    const double m = extreme_of(spec).m;
    const double b = spec.shadow.b;
    const double omega = spec.shadow.omega;
    double sum = 0.0;
    for (int l = 0; l <= n; ++l) {
        sum += std::exp(std::log(gross_weight(l, n)) + (l - b + 3.0) / 2.0 * std::numbers::ln2 +
                        ((l - b) / 2.0 + 0.75) * std::log(m) + ln_gamma(b + 0.5) - ln_gamma(l + 2.0) -
                        ln_gamma(b) + ((b + l) / 2.0 + 1.25) * std::log(omega));
    }
    return 1.0 - std::exp(-2.0 * m) - std::exp(-2.0 * m) * sum;
}

// Limit of C x^{px} J(x) as x -> 0+: returns (exponent, log of the constant).
// J(x) -> Gamma(nu) omega^nu for nu > 0 and ~ Gamma(-nu) beta^nu x^{2 nu} for nu < 0.
struct OriginBehaviour {
    double exponent;
    double log_const;  // +inf encodes a logarithmic divergence
};

OriginBehaviour origin_behaviour(const TermShape& t, double omega) {
    if (t.nu > 0.0) return {t.px, t.log_coef + ln_gamma(t.nu) + t.nu * std::log(omega)};
    if (t.nu < 0.0) return {t.px + 2.0 * t.nu, t.log_coef + ln_gamma(-t.nu) + t.nu * std::log(t.beta)};
    return {t.px, kInf};
}

double series_sum_at_origin(const CompositeSpec& spec, int n, TermConvention conv) {
    double total = 0.0;
    for (int l = 0; l <= n; ++l) {
        const OriginBehaviour o = origin_behaviour(term_shape(l, n, spec, conv), spec.shadow.omega);
        if (o.exponent > 0.0) continue;
        if (o.exponent < 0.0 || o.log_const == kInf) return kInf;
        total += std::exp(o.log_const);
    }
    return total;
}

// Limit of the compound density as x -> 0+. Near the origin the conditional behaves as
// L r_hat^{-2 mu'} x^{2 mu' - 1} (mu' = 1 for the Extreme model); integrating against
// y^{b-1} either converges, giving x^{2 mu' - 1}, or is dominated by y where r_hat(y) ~ x,
// giving x^{2b - 1} (rms) or x^{b - 1} (ms).
double origin_limit(const CompositeSpec& spec, const QuadConfig& cfg) {
    const bool rms = spec.compounding == Compounding::root_mean_square;
    const double b = spec.shadow.b;
    const double omega = spec.shadow.omega;
    const auto* km = std::get_if<KappaMuShape>(&spec.multipath);
    const double mu_eff = km != nullptr ? km->mu : 1.0;
    const double e_mu = 2.0 * mu_eff - 1.0;
    const double e_b = rms ? 2.0 * b - 1.0 : b - 1.0;
    if (std::min(e_mu, e_b) > 0.0) return 0.0;
    if (std::min(e_mu, e_b) < 0.0 || (e_mu == 0.0 && e_b == 0.0)) return kInf;
    const double s = rms ? 1.0 : 2.0;  // r_hat = y^{s/2}
    if (e_mu == 0.0) {
        // mu = 1/2: the conditional has the finite origin value C / r_hat.
        const double mu = km->mu;
        const double log_c = std::log(2.0) + mu * std::log(mu) + mu * std::log1p(km->kappa) - mu * km->kappa -
                             ln_gamma(mu);
        return std::exp(log_c + ln_gamma(b - 0.5 * s) - 0.5 * s * std::log(omega) - ln_gamma(b));
    }
    // b at the threshold: the limit is (2/s) E[R^{-1}] / (Gamma(b) omega^b) for the unit-rms conditional.
    const QuadResult r = integrate_semi_infinite(
        [&](double rho) { return conditional_envelope_pdf(rho, spec.multipath, 1.0) / rho; }, cfg);
    const double inv_moment = require_converged(r, "origin limit, " + to_string(spec));
    return 2.0 / s * inv_moment * std::exp(-ln_gamma(b) - b * std::log(omega));
}

double continuous_target_mass(const CompositeSpec& spec) {
    return 1.0 - atom_of(spec);
}

}  // namespace

void CompositeSpec::validate() const {
    if (const auto* km = std::get_if<KappaMuShape>(&multipath)) {
        KappaMuParams{km->kappa, km->mu, 1.0}.validate();
    } else {
        std::get<KappaMuExtremeParams>(multipath).validate();
    }
    shadow.validate();
}

void SeriesConfig::validate() const {
    if (n < 0) throw std::invalid_argument("series order n must be non-negative");
}

std::string to_string(const CompositeSpec& spec) {
    std::ostringstream os;
    os.precision(17);
    if (const auto* km = std::get_if<KappaMuShape>(&spec.multipath)) {
        os << "kappa-mu/gamma{kappa=" << km->kappa << ", mu=" << km->mu;
    } else {
        os << "kappa-mu-extreme/gamma{m=" << std::get<KappaMuExtremeParams>(spec.multipath).m;
    }
    os << ", b=" << spec.shadow.b << ", omega=" << spec.shadow.omega << ", "
       << (spec.compounding == Compounding::mean_square ? "mean_square" : "root_mean_square") << "}";
    return os.str();
}

CompositeSpec kappa_mu_gamma(double kappa, double mu, double b, double omega, Compounding c) {
    CompositeSpec s{KappaMuShape{kappa, mu}, GammaShadowParams{b, omega}, c};
    s.validate();
    return s;
}

CompositeSpec kmu_extreme_gamma(double m, double b, double omega, Compounding c) {
    CompositeSpec s{KappaMuExtremeParams{m}, GammaShadowParams{b, omega}, c};
    s.validate();
    return s;
}

double conditional_rms(double y, Compounding c) {
    return c == Compounding::root_mean_square ? std::sqrt(y) : y;
}

double conditional_envelope_pdf(double x, const Multipath& mp, double r_hat) {
    if (const auto* km = std::get_if<KappaMuShape>(&mp)) {
        return kappa_mu_envelope_pdf(x, KappaMuParams{km->kappa, km->mu, r_hat});
    }
    const double m = std::get<KappaMuExtremeParams>(mp).m;
    if (!(x >= 0.0)) throw DomainError("conditional_envelope_pdf: envelope must be non-negative");
    if (x == 0.0 || std::isinf(x)) return 0.0;
    return std::exp(detail::log_kappa_mu_extreme_envelope_pdf(x, m, r_hat));
}

MixedValue composite_envelope_pdf_numeric(double x, const CompositeSpec& spec, const QuadConfig& cfg) {
    spec.validate();
    cfg.validate();
    if (!(x >= 0.0)) throw DomainError("composite_envelope_pdf_numeric: envelope must be non-negative");
    MixedValue out{atom_of(spec), 0.0};
    if (std::isinf(x)) return out;
    if (x == 0.0) {
        out.density = origin_limit(spec, cfg);
        return out;
    }
    const double b = spec.shadow.b;
    const double omega = spec.shadow.omega;
    const double log_x = std::log(x);
    // Over u = ln y: log r_hat is u/2 (rms) or u (ms).
    const double r_hat_slope = spec.compounding == Compounding::root_mean_square ? 0.5 : 1.0;
    const double log_gamma_norm = ln_gamma(b) + b * std::log(omega);
    std::function<double(double)> log_std;
    if (const auto* km = std::get_if<KappaMuShape>(&spec.multipath)) {
        log_std = [kappa = km->kappa, mu = km->mu](double lr) { return detail::log_kappa_mu_std_pdf(lr, kappa, mu); };
    } else {
        log_std = [m = extreme_of(spec).m](double lr) { return detail::log_kappa_mu_extreme_std_pdf(lr, m); };
    }
    // y dy-Jacobian included: integrand in u is y p_Y(y) p(x | r_hat(y)).
    const Integrand integrand = [&](double u) {
        const double log_r_hat = r_hat_slope * u;
        const double v = b * u - std::exp(u) / omega - log_gamma_norm + log_std(log_x - log_r_hat) - log_r_hat;
        return std::exp(v);
    };

    // The conditional peaks where r_hat(y) = x and is negligible once rho^2 > e^45;
    // the gamma factor is negligible beyond y_c + omega (2b + 100).
    const double u_c = log_x / r_hat_slope;
    const double u_lo = u_c - 45.0;
    const double log_far = std::log(omega * (2.0 * b + 100.0));
    const double u_hi = std::max(u_c, log_far) + std::log1p(std::exp(-std::fabs(u_c - log_far)));
    std::vector<double> cuts = {u_lo, u_hi};
    for (double u : {u_c, std::log(b * omega)})
        if (u > u_lo && u < u_hi) cuts.push_back(u);
    std::sort(cuts.begin(), cuts.end());

    QuadConfig piece_cfg = cfg;
    piece_cfg.transform = QuadTransform::rational;  // adaptive Gauss-Kronrod on finite pieces
    double value = 0.0;
    double err = 0.0;
    bool converged = true;
    int refinements = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (!(cuts[i + 1] > cuts[i])) continue;
        const QuadResult r = integrate_finite(integrand, cuts[i], cuts[i + 1], piece_cfg);
        value += r.value;
        err += r.err_estimate;
        converged = converged && r.converged;
        refinements = std::max(refinements, r.refinements_used);
    }
    const QuadResult total{value, err, refinements, converged || err <= std::max(cfg.abs_tol, cfg.rel_tol * value)};
    std::ostringstream ctx;
    ctx.precision(17);
    ctx << "x=" << x << ", " << to_string(spec);
    out.density = require_converged(total, ctx.str());
    return out;
}

MixedValue composite_power_pdf_numeric(double w, const CompositeSpec& spec, const QuadConfig& cfg) {
    if (!(w > 0.0)) throw DomainError("composite_power_pdf_numeric: power must be positive");
    const double x = std::sqrt(w);
    MixedValue v = composite_envelope_pdf_numeric(x, spec, cfg);
    v.density /= 2.0 * x;
    return v;
}

MixedDensity composite_density(const CompositeSpec& spec, const QuadConfig& cfg) {
    spec.validate();
    return {atom_of(spec), [spec, cfg](double x) { return composite_envelope_pdf_numeric(x, spec, cfg).density; }};
}

double k_distribution_pdf(double x, double b, double omega) {
    GammaShadowParams{b, omega}.validate();
    if (!(x >= 0.0)) throw DomainError("k_distribution_pdf: envelope must be non-negative");
    if (std::isinf(x)) return 0.0;
    if (x == 0.0) {
        if (b > 0.5) return 0.0;
        if (b < 0.5) return kInf;
        return 2.0 / std::sqrt(omega);
    }
    return std::exp(std::log(4.0) + b * std::log(x) + log_bessel_k(b - 1.0, 2.0 * x / std::sqrt(omega)) -
                    ln_gamma(b) - 0.5 * (b + 1.0) * std::log(omega));
}

double log_inverse_gamma_kernel_integral(double nu, double beta, double gamma) {
    if (!(beta > 0.0) || !(gamma > 0.0)) throw DomainError("inverse_gamma_kernel_integral: beta and gamma must be positive");
    return std::numbers::ln2 + 0.5 * nu * (std::log(beta) - std::log(gamma)) +
           log_bessel_k(nu, 2.0 * std::sqrt(beta * gamma));
}

double inverse_gamma_kernel_integral(double nu, double beta, double gamma) {
    return std::exp(log_inverse_gamma_kernel_integral(nu, beta, gamma));
}

double series_term_integral(int l, double x, const CompositeSpec& spec, TermMethod method, TermConvention convention,
                            const QuadConfig& cfg) {
    spec.validate();
    if (l < 0) throw DomainError("series_term_integral: l must be non-negative");
    if (!(x >= 0.0)) throw DomainError("series_term_integral: envelope must be non-negative");
    const TermShape t = term_shape(l, l, spec, convention);
    const double omega = spec.shadow.omega;
    if (x == 0.0) {
        if (t.nu <= 0.0) return kInf;
        return std::exp(ln_gamma(t.nu) + t.nu * std::log(omega));
    }
    const double beta = t.beta * x * x;
    if (method == TermMethod::closed_form) return inverse_gamma_kernel_integral(t.nu, beta, 1.0 / omega);

    const double p = t.nu - 1.0;
    const QuadResult r = integrate_semi_infinite(
        [=](double y) { return std::exp(p * std::log(y) - beta / y - y / omega); }, cfg);
    return require_converged(r, "series term l=" + std::to_string(l) + ", " + to_string(spec));
}

double series_raw_mass(const CompositeSpec& spec, int n) {
    if (n < 0) throw std::invalid_argument("series order n must be non-negative");
    double sum = 0.0;
    if (const auto* km = std::get_if<KappaMuShape>(&spec.multipath)) {
        const double lambda = km->mu * km->kappa;
        for (int l = 0; l <= n; ++l)
            sum += std::exp(std::log(gross_weight(l, n)) - lambda + l * std::log(lambda) - ln_gamma(l + 1.0));
        return sum;
    }
    const double lambda = 2.0 * extreme_of(spec).m;
    for (int l = 0; l <= n; ++l)
        sum += std::exp(std::log(gross_weight(l, n)) - lambda + (l + 1.0) * std::log(lambda) - ln_gamma(l + 2.0));
    return sum;
}

double kappa_mu_gamma_envelope_pdf_series(double x, const CompositeSpec& spec, const SeriesConfig& sc) {
    spec.validate();
    sc.validate();
    kappa_mu_of(spec);
    require_rms_compounding(spec);
    if (!(x > 0.0)) throw DomainError("kappa_mu_gamma_envelope_pdf_series: envelope must be positive");
    if (std::isinf(x)) return 0.0;
    if (sc.mode == SeriesMode::literal) return literal_kappa_mu_series(x, spec, sc.n);
    return raw_series(x, spec, sc.n) / series_raw_mass(spec, sc.n);
}

double kappa_mu_gamma_power_pdf_series(double w, const CompositeSpec& spec, const SeriesConfig& sc) {
    if (!(w > 0.0)) throw DomainError("kappa_mu_gamma_power_pdf_series: power must be positive");
    const double x = std::sqrt(w);
    return kappa_mu_gamma_envelope_pdf_series(x, spec, sc) / (2.0 * x);
}

MixedValue kmu_extreme_gamma_envelope_pdf_series(double x, const CompositeSpec& spec, const SeriesConfig& sc) {
    spec.validate();
    sc.validate();
    const double m = extreme_of(spec).m;
    require_rms_compounding(spec);
    if (!(x > 0.0)) throw DomainError("kmu_extreme_gamma_envelope_pdf_series: envelope must be positive");
    if (sc.mode == SeriesMode::literal) {
        return {printed_S_extreme(spec, sc.n), std::isinf(x) ? 0.0 : literal_extreme_series(x, spec, sc.n)};
    }
    const double atom = std::exp(-2.0 * m);
    if (std::isinf(x)) return {atom, 0.0};
    return {atom, raw_series(x, spec, sc.n) * continuous_target_mass(spec) / series_raw_mass(spec, sc.n)};
}

MixedValue kmu_extreme_gamma_power_pdf_series(double w, const CompositeSpec& spec, const SeriesConfig& sc) {
    if (!(w > 0.0)) throw DomainError("kmu_extreme_gamma_power_pdf_series: power must be positive");
    const double x = std::sqrt(w);
    MixedValue v = kmu_extreme_gamma_envelope_pdf_series(x, spec, sc);
    v.density /= 2.0 * x;
    return v;
}

MixedValue envelope_pdf_series(double x, const CompositeSpec& spec, const SeriesConfig& sc) {
    if (spec.is_extreme()) return kmu_extreme_gamma_envelope_pdf_series(x, spec, sc);
    return {0.0, kappa_mu_gamma_envelope_pdf_series(x, spec, sc)};
}

MixedValue envelope_pdf_series_at_origin(const CompositeSpec& spec, const SeriesConfig& sc) {
    spec.validate();
    sc.validate();
    require_rms_compounding(spec);
    if (sc.mode == SeriesMode::literal) {
        const double atom = spec.is_extreme() ? printed_S_extreme(spec, sc.n) : 0.0;
        return {atom, series_sum_at_origin(spec, sc.n, TermConvention::printed)};
    }
    const double raw = series_sum_at_origin(spec, sc.n, TermConvention::dimension_corrected);
    return {atom_of(spec), raw * continuous_target_mass(spec) / series_raw_mass(spec, sc.n)};
}

SeriesNormalization series_atom_S(const CompositeSpec& spec, const SeriesConfig& sc, const QuadConfig& cfg) {
    spec.validate();
    sc.validate();
    kappa_mu_of(spec);
    require_rms_compounding(spec);
    SeriesNormalization out;
    out.printed_S = printed_S_kappa_mu(spec, sc.n);
    out.analytic_mass = series_raw_mass(spec, sc.n);
    const int n = sc.n;
    const double raw_integral = require_converged(
        integrate_semi_infinite([&](double x) { return raw_series(x, spec, n); }, cfg), "series mass");
    const double literal_integral = require_converged(
        integrate_semi_infinite([&](double x) { return literal_kappa_mu_series(x, spec, n); }, cfg),
        "literal series mass");
    out.measured_S = 1.0 - raw_integral;
    out.measured_S_literal = 1.0 - literal_integral;
    return out;
}

SeriesNormalization extreme_series_atom_S(const CompositeSpec& spec, const SeriesConfig& sc, const QuadConfig& cfg) {
    spec.validate();
    sc.validate();
    extreme_of(spec);
    require_rms_compounding(spec);
    SeriesNormalization out;
    out.atom = atom_of(spec);
    out.printed_S = printed_S_extreme(spec, sc.n);
    out.analytic_mass = series_raw_mass(spec, sc.n);
    const int n = sc.n;
    const double raw_integral = require_converged(
        integrate_semi_infinite([&](double x) { return raw_series(x, spec, n); }, cfg), "series mass");
    const double literal_integral = require_converged(
        integrate_semi_infinite([&](double x) { return literal_extreme_series(x, spec, n); }, cfg),
        "literal series mass");
    out.measured_S = 1.0 - out.atom - raw_integral;
    out.measured_S_literal = 1.0 - out.atom - literal_integral;
    return out;
}

double printed_assembled_envelope(double x, const CompositeSpec& spec, int n) {
    spec.validate();
    if (!(x > 0.0)) throw DomainError("printed_assembled_envelope: envelope must be positive");
    const double b = spec.shadow.b;
    const double omega = spec.shadow.omega;
    double sum = 0.0;
    if (const auto* km = std::get_if<KappaMuShape>(&spec.multipath)) {
        const double kappa = km->kappa;
        const double mu = km->mu;
        const double arg = 2.0 * x * std::sqrt(mu * (1.0 + kappa) / omega);
        for (int l = 0; l <= n; ++l) {
            const double outer = std::log(gross_weight(l, n)) + l * std::log(kappa) - mu * kappa -
                                 ln_gamma(l + 1.0) - ln_gamma(b);
            const double inner = (mu + 0.5) * std::log(mu) + ln_gamma(mu + 0.5) - 0.25 * std::numbers::ln2 +
                                 0.5 * std::log(omega) + std::log(4.0) +
                                 ((mu + 3.0 * l + b) / 2.0 + 0.25) * std::log(mu) +
                                 (mu + l + b - 0.5) * std::log(x) + log_bessel_k(b - mu - l + 0.5, arg) -
                                 ln_gamma(mu + l) + ((mu + b + l) / 2.0 + 0.25) * std::log1p(kappa) -
                                 ((b + mu + l) / 2.0 - 0.25) * std::log(omega);
            sum += std::exp(outer + inner);
        }
        return 1.0 - sum;
    }
    const double m = extreme_of(spec).m;
    const double arg = 2.0 * x * std::sqrt(2.0 * m / omega);
    for (int l = 0; l <= n; ++l) {
        const double outer = std::log(gross_weight(l, n)) - 2.0 * m - ln_gamma(l + 2.0) - ln_gamma(b);
        const double first = ((b + 3.0 * l) / 2.0 + 3.75) * std::numbers::ln2 + log_bessel_k(b - l - 0.5, arg) +
                             (b + l + 0.5) * std::log(x) - ln_gamma(l + 1.0) -
                             ((b + l) / 2.0 + 0.25) * std::log(omega) + ((b + 3.0 * l) / 2.0 + 1.75) * std::log(m);
        const double second = ((b + l) / 2.0 + 1.25) * std::log(omega) + ln_gamma(b + 0.5) -
                              (b - l - 3.0) / 2.0 * std::numbers::ln2 - ((b - l) / 2.0 - 0.75) * std::log(m);
        sum += std::exp(outer + first) - std::exp(outer + second);
    }
    return 1.0 - std::exp(-2.0 * m) + sum;
}

}  // namespace fading
