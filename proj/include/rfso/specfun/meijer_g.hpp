#pragma once

#include <cstddef>
#include <vector>

#include "rfso/specfun/mellin_barnes.hpp"

namespace rfso::specfun {

// G^{m,n}_{p,q}[z | a; b] with p = a.size(), q = b.size().
struct MeijerGSpec {
    std::size_t m = 0;  // Gamma(b_j - t) factors in the numerator
    std::size_t n = 0;  // Gamma(1 - a_j + t) factors in the numerator
    std::vector<double> a;
    std::vector<double> b;
};

// Selects parameter slots for differentiation. Several slots may share one
// underlying variable; `slope` is d(slot)/d(variable).
struct ParamSlot {
    enum class Row { kA, kB };
    Row row = Row::kB;
    std::size_t index = 0;
    double slope = 1.0;
};

void validate(const MeijerGSpec& spec);

// Mellin-Barnes integrand of the G-function; the selected slots carry the
// differentiation variable with their slopes (evaluate at s = 0).
MbIntegrand meijer_g_integrand(const MeijerGSpec& spec, double z,
                               const std::vector<ParamSlot>& slots = {});

double meijer_g(const MeijerGSpec& spec, double z,
                const ContourConfig& cfg = {});

// Full result (log-magnitude and sign) for values that under/overflow.
MbResult meijer_g_full(const MeijerGSpec& spec, double z,
                       const ContourConfig& cfg = {});

double meijer_g_param_deriv(const MeijerGSpec& spec,
                            const std::vector<ParamSlot>& slots, int order,
                            double z, const ContourConfig& cfg = {});

inline constexpr int kMaxDerivOrder = 16;

} // namespace rfso::specfun
