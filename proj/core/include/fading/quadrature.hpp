#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace fading {

/// Variable change used to map the integration range onto a finite one.
enum class QuadTransform {
    rational,            // y = t / (1 - t), adaptive Gauss-Kronrod on [0, 1)
    double_exponential,  // exp-sinh: y = exp(pi/2 sinh t), step halving
};

struct QuadConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_refinements = 20;
    QuadTransform transform = QuadTransform::double_exponential;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    int refinements_used = 0;
    bool converged = false;
};

/// The integrand returned NaN or an infinity at an interior abscissa.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(double abscissa, double value);
    double abscissa() const noexcept { return abscissa_; }

private:
    double abscissa_;
};

/// A quadrature that the caller required to converge did not.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Integrand = std::function<double(double)>;

/// Integral of f over (0, inf). The double-exponential transform tolerates an
/// integrable algebraic singularity at 0. A refinement is one halving of the step
/// (double_exponential) or one bisection sweep over failing panels (rational).
/// The returned estimate is the best one seen, so extra refinements never
/// increase err_estimate.
QuadResult integrate_semi_infinite(const Integrand& f, const QuadConfig& cfg = {});

/// Integral of f over [a, b] with a < b; tanh-sinh for double_exponential,
/// adaptive Gauss-Kronrod for rational. Endpoint singularities are tolerated by the
/// tanh-sinh rule.
QuadResult integrate_finite(const Integrand& f, double a, double b, const QuadConfig& cfg = {});

/// Converged value or ConvergenceError carrying `context`.
double require_converged(const QuadResult& r, const std::string& context);

}  // namespace fading
