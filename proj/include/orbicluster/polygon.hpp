#pragma once

#include <vector>

#include "orbicluster/laurent.hpp"

namespace orbicluster {

// A decorated ideal point in the chord model: position on the unit circle
// plus a horocycle scale.  Lambda-lengths are chord / sqrt(h h').
struct DecoratedPoint {
    double angle = 0.0; // radians, taken mod 2*pi
    double h = 1.0;     // horocycle parameter, > 0
};

// Throws std::invalid_argument on coincident points or h <= 0.
double lambda_length(const DecoratedPoint& P, const DecoratedPoint& Q);

// Ptolemy exchange on the diagonal of an ideal quadrilateral:
// d' = (a1*a3 + a2*a4) / d.
double ptolemy_flip(double a1, double a2, double a3, double a4, double d);
LaurentPoly ptolemy_flip(const LaurentPoly& a1, const LaurentPoly& a2, const LaurentPoly& a3,
                         const LaurentPoly& a4, const LaurentPoly& d);

// Diagonal lambda-lengths of the equilateral ideal p-gon:
// c_k = c * sin(pi k / p) / sin(pi / p), k = 1 .. p-1.
std::vector<double> pgon_diagonals(long p, double c);

struct CcPrimeReport {
    double a = 0, b = 0, c = 0, c_prime = 0;
    double residual = 0; // |cc' - (a^2 + 2cos(pi/p) ab + b^2)| / cc'
    bool ok = false;
};

// Builds the p-fold covering model (p-gon vertices at angles 2*pi*k/p with
// parameter h, apexes offset by phi with parameter h') and checks the
// three-term exchange relation cc' = a^2 + 2cos(pi/p) ab + b^2.
CcPrimeReport verify_cc_prime(long p, double phi, double h, double h_prime, double tol = 1e-9);

// Shear coordinate of the diagonal of an ideal quadrangle from the four
// side lambda-lengths: Z = log(a1 a3 / (a2 a4)).
double shear_from_lambda(double a1, double a2, double a3, double a4);

// Cross-ratio of four points on the real line (the four-term relation);
// infinities are handled by the caller choosing finite representatives.
double cross_ratio_shear(double a, double b, double c, double d);

} // namespace orbicluster
