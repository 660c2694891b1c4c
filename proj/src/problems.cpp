#include "itm/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace itm {

// Normative family table (delta = -1 throughout):
//
//   family        rhs                        f*(0), f*'(0), f*''(0)   sigma
//   Blasius       -1/2 f f''                 0, 0, +1                  (non-iterative)
//   Sakiadis      -1/2 f f''                 0, h*^{1/2}, -1           4, homogeneous
//   Slip(c)       -1/2 f f''                 0, h* c p, +1            -1
//   Moving(b)     -1/2 f f''                 0, h* b, +1               2
//   FalknerSkan   -f f'' - beta[h* - f'^2]   0, 0, +-1                 4
//
// The slip family uses its own group (sigma = -1) with the starred condition
// f*'(0) = h* c f*''(0); this is consistent with the general class form only
// after re-deriving the starred exponents, so the table above is normative.

ProblemSpec blasius() {
    ProblemSpec spec;
    spec.family = Family::Blasius;
    spec.p = +1;
    spec.boundary = {0.0, 0.0, 0.0, 1.0};
    spec.group = {-1.0, 4.0};  // sigma unused by the non-iterative path
    spec.asym = {1.0, false};
    spec.convective_coefficient = 0.5;
    spec.default_eta_inf = 10.0;
    return spec;
}

ProblemSpec sakiadis(int p) {
    ProblemSpec spec;
    spec.family = Family::Sakiadis;
    spec.p = p;
    spec.boundary = {0.0, 1.0, 0.0, 0.0};
    spec.group = {-1.0, 4.0};
    spec.asym = {0.0, true};
    spec.convective_coefficient = 0.5;
    spec.default_eta_inf = 10.0;
    return spec;
}

ProblemSpec slip_flow(double c, int p) {
    ProblemSpec spec;
    spec.family = Family::Slip;
    spec.param = c;
    spec.p = p;
    spec.boundary = {0.0, 0.0, c, 1.0};
    spec.group = {-1.0, -1.0};
    spec.asym = {1.0, false};
    spec.convective_coefficient = 0.5;
    spec.default_eta_inf = 10.0;
    return spec;
}

ProblemSpec moving_surface(double b, int p) {
    ProblemSpec spec;
    spec.family = Family::MovingSurface;
    spec.param = b;
    spec.p = p;
    spec.boundary = {0.0, b, 0.0, 1.0};
    spec.group = {-1.0, 2.0};
    spec.asym = {1.0, false};
    spec.convective_coefficient = 0.5;
    spec.default_eta_inf = 10.0;
    return spec;
}

ProblemSpec falkner_skan(double beta, int p) {
    ProblemSpec spec;
    spec.family = Family::FalknerSkan;
    spec.param = beta;
    spec.p = p;
    spec.boundary = {0.0, 0.0, 0.0, 1.0};
    spec.group = {-1.0, 4.0};
    spec.asym = {1.0, false};
    spec.convective_coefficient = 1.0;
    spec.default_eta_inf = 20.0;
    return spec;
}

const char* family_name(Family family) {
    switch (family) {
        case Family::Blasius: return "blasius";
        case Family::Sakiadis: return "sakiadis";
        case Family::Slip: return "slip";
        case Family::MovingSurface: return "moving";
        case Family::FalknerSkan: return "falkner-skan";
    }
    return "unknown";
}

namespace {

void check_p(int p) {
    if (p != 1 && p != -1) throw std::invalid_argument("problems: p must be +1 or -1");
}

OdeSystem make_third_order(double coeff, double beta, double forcing) {
    OdeSystem sys;
    sys.dimension = 3;
    sys.rhs = [coeff, beta, forcing](double, std::span<const double> y,
                                     std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = y[2];
        dy[2] = -coeff * y[0] * y[2] - beta * (forcing - y[1] * y[1]);
    };
    return sys;
}

}  // namespace

OdeSystem auxiliary_system(const ProblemSpec& spec, double h_star) {
    if (spec.family == Family::FalknerSkan) {
        return make_third_order(spec.convective_coefficient, spec.param, h_star);
    }
    return make_third_order(spec.convective_coefficient, 0.0, 0.0);
}

std::array<double, 3> auxiliary_initial_state(const ProblemSpec& spec, double h_star) {
    check_p(spec.p);
    if (!(h_star > 0.0)) throw std::invalid_argument("problems: h_star must be positive");
    const double p = static_cast<double>(spec.p);
    switch (spec.family) {
        case Family::Blasius:
        case Family::FalknerSkan:
            return {0.0, 0.0, p};
        case Family::Sakiadis:
            return {0.0, std::sqrt(h_star), p};
        case Family::Slip:
            return {0.0, h_star * spec.param * p, p};
        case Family::MovingSurface:
            return {0.0, h_star * spec.param, p};
    }
    throw std::logic_error("problems: unreachable family");
}

OdeSystem physical_system(const ProblemSpec& spec) {
    if (spec.family == Family::FalknerSkan) {
        return make_third_order(spec.convective_coefficient, spec.param, 1.0);
    }
    return make_third_order(spec.convective_coefficient, 0.0, 0.0);
}

std::array<double, 3> physical_initial_state(const ProblemSpec& spec, double s) {
    const auto& bc = spec.boundary;
    return {bc.a, bc.b + bc.c * s, s};
}

OdeSystem sensitivity_system() {
    OdeSystem sys;
    sys.dimension = 6;
    sys.rhs = [](double, std::span<const double> u, std::span<double> du) {
        du[0] = u[1];
        du[1] = u[2];
        du[2] = -0.5 * u[0] * u[2];
        du[3] = u[4];
        du[4] = u[5];
        du[5] = -0.5 * (u[3] * u[2] + u[0] * u[5]);
    };
    return sys;
}

std::array<double, 6> sensitivity_initial_state(double h_star) {
    if (!(h_star > 0.0)) throw std::invalid_argument("problems: h_star must be positive");
    const double root = std::sqrt(h_star);
    return {0.0, root, -1.0, 0.0, 0.5 / root, 0.0};
}

double gamma_derivative(double u2_end, double u5_end, double h_star) {
    if (!(h_star > 0.0)) throw std::invalid_argument("problems: h_star must be positive");
    const double base = u2_end + std::sqrt(h_star);
    if (!(base > 0.0) || !std::isfinite(base)) throw ScalingDomainError(base);
    const double inv = 1.0 / base;
    return inv * inv *
           (1.0 - 2.0 * (u5_end + 0.5 / std::sqrt(h_star)) * inv * h_star);
}

}  // namespace itm
