#include "orbicluster/polygon.hpp"

#include <cmath>
#include <stdexcept>

namespace orbicluster {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double lambda_length(const DecoratedPoint& P, const DecoratedPoint& Q) {
    if (P.h <= 0 || Q.h <= 0) throw std::invalid_argument("horocycle parameter must be positive");
    double half = 0.5 * (P.angle - Q.angle);
    double chord = 2.0 * std::abs(std::sin(half));
    if (chord == 0.0) throw std::invalid_argument("lambda_length: coincident points");
    return chord / std::sqrt(P.h * Q.h);
}

double ptolemy_flip(double a1, double a2, double a3, double a4, double d) {
    if (d == 0.0) throw std::invalid_argument("ptolemy_flip: zero diagonal");
    return (a1 * a3 + a2 * a4) / d;
}

LaurentPoly ptolemy_flip(const LaurentPoly& a1, const LaurentPoly& a2, const LaurentPoly& a3,
                         const LaurentPoly& a4, const LaurentPoly& d) {
    if (d.is_zero()) throw std::invalid_argument("ptolemy_flip: zero diagonal");
    return exact_divide(a1 * a3 + a2 * a4, d);
}

std::vector<double> pgon_diagonals(long p, double c) {
    if (p < 2 || c <= 0) throw std::invalid_argument("pgon_diagonals: need p >= 2 and c > 0");
    std::vector<double> out;
    out.reserve(p - 1);
    double s1 = std::sin(kPi / static_cast<double>(p));
    for (long k = 1; k <= p - 1; ++k)
        out.push_back(c * std::sin(kPi * static_cast<double>(k) / static_cast<double>(p)) / s1);
    return out;
}

CcPrimeReport verify_cc_prime(long p, double phi, double h, double h_prime, double tol) {
    if (p < 2) throw std::invalid_argument("verify_cc_prime: p >= 2 required");
    if (!(phi > 0 && phi < 2 * kPi / static_cast<double>(p)))
        throw std::invalid_argument("verify_cc_prime: phi out of (0, 2pi/p)");
    double step = 2 * kPi / static_cast<double>(p);
    DecoratedPoint v0{0.0, h}, v1{step, h};
    DecoratedPoint apex0{phi, h_prime}, apex1{step + phi, h_prime};

    CcPrimeReport rep;
    rep.a = lambda_length(apex0, v1);
    rep.b = lambda_length(v0, apex0);
    rep.c = lambda_length(v0, v1);
    rep.c_prime = lambda_length(apex0, apex1);
    double w = 2.0 * std::cos(kPi / static_cast<double>(p));
    double lhs = rep.c * rep.c_prime;
    double rhs = rep.a * rep.a + w * rep.a * rep.b + rep.b * rep.b;
    rep.residual = std::abs(lhs - rhs) / lhs;
    rep.ok = rep.residual < tol;
    return rep;
}

double shear_from_lambda(double a1, double a2, double a3, double a4) {
    if (a1 <= 0 || a2 <= 0 || a3 <= 0 || a4 <= 0)
        throw std::invalid_argument("shear_from_lambda: nonpositive lambda-length");
    return std::log(a1 * a3 / (a2 * a4));
}

double cross_ratio_shear(double a, double b, double c, double d) {
    return -((b - c) * (d - a)) / ((b - a) * (d - c));
}

} // namespace orbicluster
