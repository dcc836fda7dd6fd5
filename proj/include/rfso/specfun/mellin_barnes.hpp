#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rfso::specfun {

// Numerical failure of a contour integral (non-convergence, no placeable
// contour, ...). Carries the achieved error estimate where meaningful.
class numerics_error : public std::runtime_error {
public:
    explicit numerics_error(const std::string& what, double err_estimate = -1.0)
        : std::runtime_error(what), err_estimate_(err_estimate) {}
    double err_estimate() const { return err_estimate_; }

private:
    double err_estimate_;
};

// One factor Gamma(c + d*t + e*s)^sign of a Mellin-Barnes integrand, where
// t is the contour variable and s an external parameter the integral may be
// differentiated against. Classic Meijer-G factors have d = +-1, e = 0.
struct GammaTerm {
    double c = 0.0;
    double d = 0.0;
    double e = 0.0;
    int sign = +1; // +1 numerator, -1 denominator
};

// Integrand  prod_i Gamma(c_i + d_i t + e_i s)^{sign_i} * exp(t * log_z),
// integrated as (1 / 2*pi*i) * integral over a vertical line in t.
struct MbIntegrand {
    std::vector<GammaTerm> terms;
    double log_z = 0.0;
};

enum class ShiftStrategy {
    kSaddle,   // minimize the real-axis integrand modulus inside the strip
    kMidpoint, // halfway between the bounding pole families
};

struct ContourConfig {
    // 0 selects adaptive refinement for both knobs.
    int node_count = 0;
    double truncation_height = 0.0;
    ShiftStrategy shift_strategy = ShiftStrategy::kSaddle;
    double rel_tol = 1e-11;
    int max_refinements = 18;
    // Explicit analyticity strip (both set => overrides the automatic
    // pole-family split; needed when a gamma factor contributes poles on
    // both sides of the intended contour).
    double strip_lo = std::numeric_limits<double>::quiet_NaN();
    double strip_hi = std::numeric_limits<double>::quiet_NaN();
};

struct MbResult {
    double value = 0.0;   // exp(log_abs) * sign, 0 on underflow
    double log_abs = 0.0; // log |integral|
    int sign = 0;
    double imag_rel = 0.0; // |imag residual| / |value|
    double err_estimate = 0.0;
    bool converged = false;
};

// Strip of admissible contour abscissas (between the two pole families).
// lo/hi may be -inf/+inf when a family is absent.
struct Strip {
    double lo;
    double hi;
};
Strip contour_strip(const MbIntegrand& f, double s);

// Evaluate d^order/ds^order of the contour integral at parameter value s.
// Throws numerics_error when no contour is placeable or the quadrature does
// not self-converge to cfg.rel_tol.
MbResult mb_evaluate(const MbIntegrand& f, double s, int order, const ContourConfig& cfg);

// Evaluate all derivative orders 0..max_order in a single contour pass
// (the node gammas are shared across orders). Element m of the result is
// d^m/ds^m of the integral.
std::vector<MbResult> mb_evaluate_multi(const MbIntegrand& f, double s,
                                        int max_order, const ContourConfig& cfg);

// Leading small-z expansion: sum of residues of orders k = 0..k_max at each
// right-family pole (numerator terms with d < 0), with the same d^order/ds^order
// applied. Degenerate (coinciding) poles are rejected.
double mb_leading_residues(const MbIntegrand& f, double s, int order, int k_max);

} // namespace rfso::specfun
