#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace rfso::system {

// Transceiver I/Q imbalance: K1 = (1 + eps e^{+j phi})/2 (Tx) or
// (1 + eps e^{-j phi})/2 (Rx); K2 = 1 - conj(K1). kappa = |K1|^2/|K2|^2 is
// the image-rejection ratio; infinite for the ideal front-end.
struct IqiParams {
    double epsilon_t = 1.0;
    double epsilon_r = 1.0;
    double phi_t = 0.0; // radians
    double phi_r = 0.0;

    void validate() const;
};

enum class IqiSide { kTx, kRx };

struct IqiCoefficients {
    std::complex<double> k1;
    std::complex<double> k2;
    double irr;    // linear; +inf in the ideal case
    double irr_db; // +inf in the ideal case

    bool ideal() const { return !std::isfinite(irr); }

    // Power-normalized signal-branch gain |K1|^2 / (|K1|^2 + |K2|^2).
    // The raw coefficients scale the front-end power by (1 + eps^2)/2; a
    // fair comparison across mismatch settings holds total power fixed, so
    // the end-to-end SINR uses this gain (1 for the ideal front-end, < 1
    // otherwise). The rejection ratio is unaffected by the normalization.
    double signal_gain() const {
        const double p1 = std::norm(k1), p2 = std::norm(k2);
        return p1 / (p1 + p2);
    }
};

IqiCoefficients iqi_coefficients(const IqiParams& p, IqiSide side);

double sinr_node1(double gamma_fso, double gamma_i, double irr_r);
double sinr_node2(double gamma_rf, double gamma_i, double irr_t, double k1_t_sq);

} // namespace rfso::system
