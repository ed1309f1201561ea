#pragma once

// Reference values computed offline at 50-digit precision from the closed
// forms, and the parameter sets they belong to.

#include "socbloch/model.hpp"

namespace oracle {

inline socbloch::PhysicalParams fig2a(double omega = 50) {
    socbloch::PhysicalParams p;
    p.gamma = 0.3;
    p.Gamma = 0.1;
    p.g = 0.6;
    p.g12 = 0.2;
    p.V0 = 1;
    p.Nt = 5;
    p.omega = omega;
    return socbloch::with_matched_drive(p);
}

inline socbloch::PhysicalParams fig2b() {
    auto p = fig2a();
    p.V0 = 3.62053;
    return p;
}

inline constexpr double ratio = 0.31622776601683793;
inline constexpr double mu = 3.075;
inline constexpr double a1 = 1.8336223233023284, b1 = 1.4533309411529875;
inline constexpr double a2 = 1.6993614022589108, b2 = 1.2797770022497558;
inline constexpr double V2c = 3.6205266807797944, V1c = 4.3794733192202055;
inline constexpr double fig1b_V1c = 7.051316701949486;
inline constexpr double psi1_re_pi4 = 1.2965667789421084, psi1_im_pi4 = 1.0276601637975047;
inline constexpr double R1sq_0 = 3.3621708245126285, R2sq_0 = 2.8878291754873716;
inline constexpr double N1 = 2.7371708245126285, N2 = 2.2628291754873715;
inline constexpr double imbalance = 0.4743416490252569;
inline constexpr double J1 = 2.6648600568441004, J2 = 2.1748036411218503;
inline constexpr double v1_0 = 0.7926010294942083;
inline constexpr double gamma_max = 0.9975031327880008;
inline constexpr double gamma_J2_zero = 0.863143479661108;
inline constexpr double entropy_bits = 0.0021418062870771884;
inline constexpr double lambda_min = 1.5157588115313613e-4;
inline constexpr double mu_eff1 = 3.0948683298050514, mu_eff2 = 2.9051316701949486;
inline constexpr double gamma_eff1 = 0.016227766016837933, gamma_eff2 = 0.6162277660168379;

}  // namespace oracle
