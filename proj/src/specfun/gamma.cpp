#include "rfso/specfun/gamma.hpp"

#include <array>
#include <cmath>

namespace rfso::specfun {

namespace {

// Lanczos coefficients, g = 607/128, 15 terms (Boost/GSL choice).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_nonpositive_integer(cd z) {
    if (z.imag() != 0.0) return false;
    const double x = z.real();
    return x <= 0.0 && x == std::floor(x);
}

// log(sin(pi z)) stable for large |Im z|.
cd log_sin_pi(cd z) {
    // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / (2i)
    if (z.imag() > 0.0) {
        // factor out e^{i pi z}: sin = e^{-i pi z}(1 - e^{2 i pi z}) * i/2 ... careful:
        // sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2i)
        const cd i(0.0, 1.0);
        return -i * kPi * z + std::log(cd(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * i * kPi * z));
    }
    const cd i(0.0, 1.0);
    return i * kPi * z + std::log(cd(0.0, -0.5)) + std::log(1.0 - std::exp(-2.0 * i * kPi * z));
}

cd log_gamma_lanczos(cd z) {
    // valid for Re z >= 0.5
    cd sum(kLanczos[0], 0.0);
    for (std::size_t k = 1; k < kLanczos.size(); ++k) {
        sum += kLanczos[k] / (z + cd(static_cast<double>(k) - 1.0, 0.0));
    }
    const cd t = z + cd(kLanczosG - 0.5, 0.0);
    return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(sum);
}

// Bernoulli numbers B_2, B_4, ..., B_16.
constexpr std::array<double, 8> kBernoulli2n = {
    1.0 / 6.0,    -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,   -3617.0 / 510.0,
};

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

cd log_gamma(cd z) {
    if (is_nonpositive_integer(z)) {
        throw domain_error("log_gamma: pole at non-positive integer");
    }
    if (z.real() >= 0.5) {
        return log_gamma_lanczos(z);
    }
    // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
    return std::log(kPi) - log_sin_pi(z) - log_gamma_lanczos(1.0 - z);
}

signed_log log_gamma_signed(double x) {
    if (x <= 0.0 && x == std::floor(x)) {
        throw domain_error("log_gamma_signed: pole at non-positive integer");
    }
    if (x > 0.0) return {std::lgamma(x), 1};
    // Gamma(x) sign for x < 0 alternates per unit interval.
    const int k = static_cast<int>(std::floor(x));
    const int sign = (k % 2 == 0) ? 1 : -1;
    return {std::lgamma(x), sign};
}

namespace {

// Asymptotic polygamma for Re z >= threshold; recurrence lift below it.
constexpr double kPolygammaShift = 20.0;

cd polygamma_asymptotic(int k, cd z) {
    if (k == 0) {
        cd s = std::log(z) - 0.5 / z;
        const cd z2 = z * z;
        cd p = 1.0 / z2;
        for (int j = 0; j < 8; ++j) {
            s -= kBernoulli2n[j] / (2.0 * (j + 1)) * p;
            p /= z2;
        }
        return s;
    }
    cd s = factorial(k - 1) * std::pow(z, -k) + factorial(k) / 2.0 * std::pow(z, -(k + 1));
    for (int j = 1; j <= 8; ++j) {
        s += kBernoulli2n[j - 1] * factorial(2 * j + k - 1) / factorial(2 * j) *
             std::pow(z, -(2 * j + k));
    }
    return (k % 2 == 0) ? -s : s; // (-1)^{k-1} prefactor
}

} // namespace

cd polygamma(int order, cd z) {
    if (order < 0) throw domain_error("polygamma: negative order");
    if (is_nonpositive_integer(z)) {
        throw domain_error("polygamma: pole at non-positive integer");
    }
    cd shift(0.0, 0.0);
    const double sgn = (order % 2 == 0) ? 1.0 : -1.0; // (-1)^k
    int guard = 0;
    while (z.real() < kPolygammaShift) {
        // psi^{(k)}(z) = psi^{(k)}(z+1) - (-1)^k k! z^{-k-1}
        shift -= sgn * factorial(order) * std::pow(z, -(order + 1));
        z += 1.0;
        if (++guard > 200000) throw domain_error("polygamma: shift overflow");
    }
    return shift + polygamma_asymptotic(order, z);
}

void polygamma_all(int kmax, cd z, cd* out) {
    if (kmax < 0) throw domain_error("polygamma_all: negative order");
    if (is_nonpositive_integer(z)) {
        throw domain_error("polygamma_all: pole at non-positive integer");
    }
    for (int k = 0; k <= kmax; ++k) out[k] = cd(0.0, 0.0);
    int guard = 0;
    while (z.real() < kPolygammaShift) {
        // psi^{(k)}(z) = psi^{(k)}(z+1) - (-1)^k k! z^{-k-1}
        const cd inv = 1.0 / z;
        cd p = inv; // z^{-(k+1)} running power
        double fac = 1.0, sgn = 1.0;
        for (int k = 0; k <= kmax; ++k) {
            p *= inv;
            if (k > 0) {
                fac *= k;
                sgn = -sgn;
            }
            out[k] -= sgn * fac * p * z; // p*z = z^{-(k+1)}
        }
        z += 1.0;
        if (++guard > 200000) throw domain_error("polygamma_all: shift overflow");
    }
    for (int k = 0; k <= kmax; ++k) out[k] += polygamma_asymptotic(k, z);
}

cd digamma(cd z) { return polygamma(0, z); }

double polygamma(int order, double x) {
    if (x <= 0.0) throw domain_error("polygamma: requires x > 0");
    return polygamma(order, cd(x, 0.0)).real();
}

} // namespace rfso::specfun
