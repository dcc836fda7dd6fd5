#include "rfso/system/iqi.hpp"

#include <cmath>
#include <stdexcept>

namespace rfso::system {

void IqiParams::validate() const {
    if (!(epsilon_t > 0.0) || !(epsilon_r > 0.0)) {
        throw std::invalid_argument("IqiParams: amplitude mismatch must be > 0");
    }
}

IqiCoefficients iqi_coefficients(const IqiParams& p, IqiSide side) {
    p.validate();
    const double eps = side == IqiSide::kTx ? p.epsilon_t : p.epsilon_r;
    const double phi = side == IqiSide::kTx ? p.phi_t : p.phi_r;
    // up-conversion (Tx) rotates by +phi, down-conversion (Rx) by -phi
    const double sgn = side == IqiSide::kTx ? 1.0 : -1.0;
    const std::complex<double> e = eps * std::exp(std::complex<double>(0.0, sgn * phi));
    IqiCoefficients c;
    c.k1 = 0.5 * (1.0 + e);
    c.k2 = 1.0 - std::conj(c.k1);
    const double n2 = std::norm(c.k2);
    c.irr = n2 > 0.0 ? std::norm(c.k1) / n2 : std::numeric_limits<double>::infinity();
    c.irr_db = 10.0 * std::log10(c.irr);
    return c;
}

double sinr_node1(double gamma_fso, double gamma_i, double irr_r) {
    if (gamma_fso < 0.0 || gamma_i < 0.0 || !(irr_r > 0.0)) {
        throw std::invalid_argument("sinr_node1: invalid inputs");
    }
    const double denom = gamma_fso / irr_r + (1.0 + 1.0 / irr_r) * gamma_i;
    if (denom == 0.0) return std::isinf(irr_r) ? INFINITY : irr_r;
    return gamma_fso / denom;
}

double sinr_node2(double gamma_rf, double gamma_i, double irr_t, double k1_t_sq) {
    if (gamma_rf < 0.0 || gamma_i < 0.0 || !(irr_t > 0.0) || !(k1_t_sq > 0.0)) {
        throw std::invalid_argument("sinr_node2: invalid inputs");
    }
    if (gamma_rf == 0.0) return gamma_i > 0.0 ? 0.0 : 0.0;
    return 1.0 / (1.0 / irr_t + gamma_i / (gamma_rf * k1_t_sq));
}

} // namespace rfso::system
