#pragma once

#include <array>
#include <string>

#include "itm/ivp.hpp"
#include "itm/scaling.hpp"

namespace itm {

enum class Family { Blasius, Sakiadis, Slip, MovingSurface, FalknerSkan };

/// Boundary constants of the class f(0) = a, f'(0) = b + c f''(0),
/// f'(inf) -> d.
struct BoundarySpec {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 1.0;
};

/// One boundary-layer problem: governing equation, boundary constants,
/// group exponents and the user-set starred curvature p = f*''(0).
///
/// The convective coefficient k in f''' + k f f'' + beta[. - (f')^2] = 0 is a
/// family constant: 1/2 for the Blasius/Sakiadis/slip/moving family, 1 for
/// Falkner-Skan. The two normalizations are never converted implicitly.
struct ProblemSpec {
    Family family = Family::Sakiadis;
    double param = 0.0;  // Slip: c, MovingSurface: b, FalknerSkan: beta
    int p = 1;           // starred f*''(0), +1 or -1
    BoundarySpec boundary;
    ExtendedScalingGroup group;
    AsymptoticSpec asym;
    double convective_coefficient = 0.5;
    double default_eta_inf = 10.0;
};

ProblemSpec blasius();
ProblemSpec sakiadis(int p = -1);
ProblemSpec slip_flow(double c, int p = +1);
ProblemSpec moving_surface(double b, int p = +1);
ProblemSpec falkner_skan(double beta, int p = +1);

const char* family_name(Family family);

/// Modified (h-embedded) governing equation in starred variables.
/// h_star enters the right-hand side only for Falkner-Skan; the half-coefficient
/// family carries h through the initial conditions alone.
OdeSystem auxiliary_system(const ProblemSpec& spec, double h_star);

/// (f*(0), f*'(0), f*''(0)) for the auxiliary IVP at a trial h*.
std::array<double, 3> auxiliary_initial_state(const ProblemSpec& spec, double h_star);

/// Original (h = 1) governing equation.
OdeSystem physical_system(const ProblemSpec& spec);

/// Initial state of the original problem with missing condition s = f''(0):
/// (a, b + c s, s).
std::array<double, 3> physical_initial_state(const ProblemSpec& spec, double s);

/// Six-equation Sakiadis system carrying (u1,u2,u3) = (f, f', f'') and their
/// sensitivities (u4,u5,u6) with respect to h*.
OdeSystem sensitivity_system();
std::array<double, 6> sensitivity_initial_state(double h_star);

/// Analytic dGamma/dh* for Sakiadis from the sensitivity endpoint values:
/// [u2 + h*^{1/2}]^{-2} {1 - 2 [u5 + h*^{-1/2}/2] [u2 + h*^{1/2}]^{-1} h*}.
double gamma_derivative(double u2_end, double u5_end, double h_star);

}  // namespace itm
