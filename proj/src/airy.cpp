#include "robin/airy.hpp"

#include <cmath>
#include <numbers>

namespace robin {
namespace {

constexpr long double kAi0 = 0.355028053887817239260063186004183176L;   // Ai(0)
constexpr long double kAip0 = 0.258819403792806798405183560189203963L;  // -Ai'(0)

// Long double accumulation keeps the cancellation near x = -8 below 1e-12.
AiryValue maclaurin(double xd) {
    const long double x = xd;
    const long double x3 = x * x * x;
    long double f = 1.0L, g = x, fp = 0.0L, gp = 1.0L;
    long double tf = 1.0L, tg = x, tfp = x * x / 2.0L, tgp = 1.0L;
    fp = tfp;
    for (int k = 1; k < 200; ++k) {
        tf *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
        tg *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
        if (k >= 2) {
            tfp *= x3 / ((3.0L * k - 1.0L) * (3.0L * k - 3.0L));
            fp += tfp;
        }
        tgp *= x3 / ((3.0L * k) * (3.0L * k - 2.0L));
        f += tf;
        g += tg;
        gp += tgp;
        if (std::abs(tf) + std::abs(tg) + std::abs(tfp) + std::abs(tgp) <
            1e-21L * (std::abs(f) + std::abs(g) + 1.0L))
            break;
    }
    return {static_cast<double>(kAi0 * f - kAip0 * g), static_cast<double>(kAi0 * fp - kAip0 * gp)};
}

// u_k and v_k of the asymptotic expansions, k = 0..kTerms-1.
constexpr int kTerms = 30;
struct Coefficients {
    double u[kTerms];
    double v[kTerms];
};

Coefficients make_coefficients() {
    Coefficients c{};
    c.u[0] = 1.0;
    c.v[0] = 1.0;
    for (int k = 1; k < kTerms; ++k) {
        c.u[k] = c.u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
                 ((2.0 * k - 1.0) * 216.0 * k);
        c.v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * c.u[k];
    }
    return c;
}

const Coefficients& coefficients() {
    static const Coefficients c = make_coefficients();
    return c;
}

AiryValue oscillatory(double x) {
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const Coefficients& c = coefficients();
    // Even/odd parts, truncated at the smallest term.
    double pu = 0.0, qu = 0.0, pv = 0.0, qv = 0.0;
    double last = INFINITY;
    double power = 1.0;
    for (int k = 0; k < kTerms; ++k) {
        const double term = std::abs(c.u[k]) * power;
        if (term > last) break;
        last = term;
        const int sign = (k / 2) % 2 == 0 ? 1 : -1;
        if (k % 2 == 0) {
            pu += sign * c.u[k] * power;
            pv += sign * c.v[k] * power;
        } else {
            qu += sign * c.u[k] * power;
            qv += sign * c.v[k] * power;
        }
        power /= zeta;
    }
    const double phase = zeta - std::numbers::pi / 4.0;
    const double cs = std::cos(phase);
    const double sn = std::sin(phase);
    const double z4 = std::pow(z, 0.25);
    const double norm = 1.0 / std::sqrt(std::numbers::pi);
    return {norm / z4 * (cs * pu + sn * qu), norm * z4 * (sn * pv - cs * qv)};
}

AiryValue decaying(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const Coefficients& c = coefficients();
    double su = 0.0, sv = 0.0;
    double last = INFINITY;
    double power = 1.0;
    for (int k = 0; k < kTerms; ++k) {
        const double term = std::abs(c.u[k]) * power;
        if (term > last) break;
        last = term;
        const double sign = k % 2 == 0 ? 1.0 : -1.0;
        su += sign * c.u[k] * power;
        sv += sign * c.v[k] * power;
        power /= zeta;
    }
    const double e = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
    const double x4 = std::pow(x, 0.25);
    return {e / x4 * su, -e * x4 * sv};
}

}  // namespace

AiryValue airy_ai(double x) {
    if (x < -8.0) return oscillatory(x);
    if (x > 5.0) return decaying(x);
    return maclaurin(x);
}

}  // namespace robin
