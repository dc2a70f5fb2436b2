#include "fading/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

namespace fading {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr int kMinLevel = 3;
constexpr std::size_t kMaxPanels = 1 << 17;

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1]; odd entries of kXgk are the
// Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double checked(const Integrand& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw EvaluationError(x, v);
    return v;
}

double tolerance(const QuadConfig& cfg, double value) {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(value));
}

// Level-by-level step halving for a double-exponential rule. `weighted(t)` returns
// f(x(t)) x'(t), or 0 where the abscissa left the representable range.
template <typename Weighted>
QuadResult de_refine(const Weighted& weighted, double t_max, const QuadConfig& cfg) {
    double h = 1.0;
    double sum = weighted(0.0);
    for (int j = 1; j * h <= t_max; ++j) sum += weighted(j * h) + weighted(-j * h);
    double prev = h * sum;

    QuadResult best{prev, std::numeric_limits<double>::infinity(), 0, false};
    int stalled = 0;
    for (int level = 1; level <= cfg.max_refinements; ++level) {
        h *= 0.5;
        for (double t = h; t <= t_max; t += 2.0 * h) sum += weighted(t) + weighted(-t);
        const double value = h * sum;
        const double err = std::fabs(value - prev);
        prev = value;
        if (err < best.err_estimate) {
            best = {value, err, level, false};
            stalled = 0;
        } else {
            ++stalled;
        }
        if (level >= kMinLevel && err <= tolerance(cfg, value)) {
            best = {value, std::min(err, best.err_estimate), level, true};
            return best;
        }
        // Roundoff floor reached; further halving only costs evaluations.
        if (level >= kMinLevel + 3 && stalled >= 3) break;
    }
    return best;
}

struct Panel {
    double a, b, value, err;
};

Panel gauss_kronrod(const Integrand& g, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked(g, center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = checked(g, center - dx);
        const double f2 = checked(g, center + dx);
        kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    return {a, b, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

// Sweep-based adaptive Gauss-Kronrod: each refinement bisects every panel whose
// error exceeds its share of the tolerance.
QuadResult adaptive_gk(const Integrand& g, double a, double b, const QuadConfig& cfg) {
    std::vector<Panel> panels{gauss_kronrod(g, a, b)};
    QuadResult best{panels[0].value, panels[0].err, 0, false};
    for (int round = 0;; ++round) {
        double value = 0.0;
        double err = 0.0;
        for (const Panel& p : panels) {
            value += p.value;
            err += p.err;
        }
        if (err <= best.err_estimate || round == 0) best = {value, err, round, false};
        const double tol = tolerance(cfg, value);
        if (err <= tol) {
            best = {value, err, round, true};
            return best;
        }
        if (round == cfg.max_refinements || panels.size() >= kMaxPanels) return best;

        const double share = tol / static_cast<double>(panels.size());
        const double worst =
            std::max_element(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) {
                return l.err < r.err;
            })->err;
        std::vector<Panel> next;
        next.reserve(panels.size() * 2);
        for (const Panel& p : panels) {
            if (p.err > share || p.err == worst) {
                const double mid = 0.5 * (p.a + p.b);
                next.push_back(gauss_kronrod(g, p.a, mid));
                next.push_back(gauss_kronrod(g, mid, p.b));
            } else {
                next.push_back(p);
            }
        }
        panels = std::move(next);
    }
}

}  // namespace

void QuadConfig::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
    if (max_refinements < 1) throw std::invalid_argument("max_refinements must be >= 1");
}

EvaluationError::EvaluationError(double abscissa, double value)
    : std::runtime_error([&] {
          std::ostringstream os;
          os.precision(17);
          os << "integrand returned " << value << " at abscissa " << abscissa;
          return os.str();
      }()),
      abscissa_(abscissa) {}

QuadResult integrate_semi_infinite(const Integrand& f, const QuadConfig& cfg) {
    cfg.validate();
    if (cfg.transform == QuadTransform::rational) {
        const Integrand mapped = [&f](double t) {
            const double s = 1.0 - t;
            const double y = t / s;
            if (!std::isfinite(y)) return 0.0;
            return checked(f, y) / (s * s);
        };
        return adaptive_gk(mapped, 0.0, 1.0, cfg);
    }
    // exp-sinh; |t| <= 6.5 spans y in roughly [1e-227, 1e226].
    const auto weighted = [&f](double t) {
        const double u = kHalfPi * std::sinh(t);
        const double y = std::exp(u);
        if (y == 0.0 || !std::isfinite(y)) return 0.0;
        const double v = checked(f, y);
        if (v == 0.0) return 0.0;
        return v * y * kHalfPi * std::cosh(t);
    };
    return de_refine(weighted, 6.5, cfg);
}

QuadResult integrate_finite(const Integrand& f, double a, double b, const QuadConfig& cfg) {
    cfg.validate();
    if (!(a < b)) {
        if (a == b) return {0.0, 0.0, 0, true};
        throw std::invalid_argument("integrate_finite: require a <= b");
    }
    if (cfg.transform == QuadTransform::rational) return adaptive_gk(f, a, b, cfg);

    const double half = 0.5 * (b - a);
    // tanh-sinh with the distance to the nearer endpoint computed directly so that
    // abscissae crowding an endpoint keep full relative precision.
    const auto weighted = [&](double t) {
        const double u = kHalfPi * std::sinh(std::fabs(t));
        const double gap = half * 2.0 / (std::exp(2.0 * u) + 1.0);
        if (gap == 0.0) return 0.0;
        const double x = t >= 0.0 ? b - gap : a + gap;
        if (x <= a || x >= b) return 0.0;
        const double v = checked(f, x);
        if (v == 0.0) return 0.0;
        const double cu = std::cosh(u);
        return v * half * kHalfPi * std::cosh(t) / (cu * cu);
    };
    return de_refine(weighted, 4.0, cfg);
}

double require_converged(const QuadResult& r, const std::string& context) {
    if (!r.converged) {
        std::ostringstream os;
        os.precision(6);
        os << "quadrature did not converge (" << context << "): value " << r.value << ", error estimate "
           << r.err_estimate << " after " << r.refinements_used << " refinements";
        throw ConvergenceError(os.str());
    }
    return r.value;
}

}  // namespace fading
