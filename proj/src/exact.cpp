#include "socbloch/exact.hpp"

#include <numbers>

namespace socbloch {

Eigen::ArrayXd unwrap_phase(const Eigen::ArrayXcd& values) {
    const Eigen::Index n = values.size();
    Eigen::ArrayXd out(n);
    if (n == 0) return out;
    constexpr double two_pi = 2 * std::numbers::pi;
    const double anchor = std::arg(values(0));
    double offset = 0;
    double prev = anchor;
    out(0) = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
        const double raw = std::arg(values(i));
        const double jump = raw - prev;
        if (jump > std::numbers::pi) {
            offset -= two_pi;
        } else if (jump < -std::numbers::pi) {
            offset += two_pi;
        }
        prev = raw;
        out(i) = raw + offset - anchor;
    }
    return out;
}

StateProfile make_profile(const Eigen::ArrayXd& x, const PhysicalParams& p, const BlochCoefficients& c) {
    StateProfile prof;
    const Eigen::Index n = x.size();
    prof.x = x;
    prof.potential = p.V0 * x.sin().square();
    for (int j = 0; j < 2; ++j) {
        prof.values[j].resize(n);
        prof.density[j].resize(n);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto psi = psi_exact(c, x(i));
        const auto r2 = density_profile(p, x(i));
        for (int j = 0; j < 2; ++j) {
            prof.values[j](i) = psi[j];
            prof.density[j](i) = r2[j];
        }
    }
    for (int j = 0; j < 2; ++j) prof.phase[j] = unwrap_phase(prof.values[j]);
    return prof;
}

}  // namespace socbloch
