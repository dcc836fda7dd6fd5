#include "rfso/specfun/meijer_g.hpp"

#include <cmath>
#include <stdexcept>

namespace rfso::specfun {

void validate(const MeijerGSpec& spec) {
    if (spec.m > spec.b.size() || spec.n > spec.a.size()) {
        throw std::invalid_argument("MeijerGSpec: require m <= q and n <= p");
    }
    // A numerator pole of Gamma(b_i - t) colliding with one of
    // Gamma(1 - a_j + t) makes the families inseparable.
    for (std::size_t i = 0; i < spec.m; ++i) {
        for (std::size_t j = 0; j < spec.n; ++j) {
            const double d = spec.a[j] - spec.b[i];
            if (d >= 1.0 - 1e-12 && std::abs(d - std::round(d)) < 1e-12) {
                throw std::invalid_argument(
                    "MeijerGSpec: a_j - b_i is a positive integer; "
                    "pole families collide");
            }
        }
    }
}

MbIntegrand meijer_g_integrand(const MeijerGSpec& spec, double z,
                               const std::vector<ParamSlot>& slots) {
    validate(spec);
    if (!(z > 0.0)) throw std::invalid_argument("meijer_g: require z > 0");

    auto slot_slope = [&](ParamSlot::Row row, std::size_t idx) {
        double e = 0.0;
        for (const auto& sl : slots) {
            if (sl.row == row && sl.index == idx) e += sl.slope;
        }
        return e;
    };

    MbIntegrand f;
    f.log_z = std::log(z);
    const std::size_t p = spec.a.size(), q = spec.b.size();
    for (std::size_t j = 0; j < q; ++j) {
        const double e = slot_slope(ParamSlot::Row::kB, j);
        if (j < spec.m) {
            f.terms.push_back({spec.b[j], -1.0, e, +1});   // Gamma(b_j - t)
        } else {
            f.terms.push_back({1.0 - spec.b[j], 1.0, -e, -1}); // 1/Gamma(1-b_j+t)
        }
    }
    for (std::size_t j = 0; j < p; ++j) {
        const double e = slot_slope(ParamSlot::Row::kA, j);
        if (j < spec.n) {
            f.terms.push_back({1.0 - spec.a[j], 1.0, -e, +1}); // Gamma(1-a_j+t)
        } else {
            f.terms.push_back({spec.a[j], -1.0, e, -1});    // 1/Gamma(a_j - t)
        }
    }
    return f;
}

MbResult meijer_g_full(const MeijerGSpec& spec, double z,
                       const ContourConfig& cfg) {
    const auto f = meijer_g_integrand(spec, z);
    auto res = mb_evaluate(f, 0.0, 0, cfg);
    if (res.imag_rel > 1e-8) {
        throw numerics_error("meijer_g: contour result has a large imaginary "
                             "residual", res.imag_rel);
    }
    return res;
}

double meijer_g(const MeijerGSpec& spec, double z, const ContourConfig& cfg) {
    return meijer_g_full(spec, z, cfg).value;
}

double meijer_g_param_deriv(const MeijerGSpec& spec,
                            const std::vector<ParamSlot>& slots, int order,
                            double z, const ContourConfig& cfg) {
    if (order < 0 || order > kMaxDerivOrder) {
        throw std::invalid_argument("meijer_g_param_deriv: order out of range");
    }
    if (order > 0 && slots.empty()) {
        throw std::invalid_argument(
            "meijer_g_param_deriv: no parameter slot selected");
    }
    const auto f = meijer_g_integrand(spec, z, slots);
    auto res = mb_evaluate(f, 0.0, order, cfg);
    if (res.imag_rel > 1e-7) {
        throw numerics_error("meijer_g_param_deriv: large imaginary residual",
                             res.imag_rel);
    }
    return res.value;
}

} // namespace rfso::specfun
