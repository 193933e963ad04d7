#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace orbicluster {

using Rational = mpq_class;
using Integer = mpz_class;

class FieldElem;

// Computes the N-th cyclotomic polynomial by dividing x^N - 1 by Phi_d for
// every proper divisor d of N.  Coefficients are exact integers.
std::vector<Integer> cyclotomic_polynomial(long N);

// The cyclotomic field Q(zeta_N) = Q[x] / Phi_N(x).  All exact coefficient
// arithmetic in this project happens in one of these.  A field instance is
// immutable; elements keep a shared handle to it.
class CyclotomicField : public std::enable_shared_from_this<CyclotomicField> {
public:
    static std::shared_ptr<const CyclotomicField> make(long conductor);

    // Smallest field housing omega_p = 2cos(pi/p) for every listed order:
    // conductor lcm{2p}.  An empty list gives the rationals (conductor 1).
    static std::shared_ptr<const CyclotomicField> for_orders(const std::vector<long>& orders);

    long conductor() const noexcept { return conductor_; }
    long degree() const noexcept { return degree_; }
    const std::vector<Integer>& modulus() const noexcept { return modulus_; }

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_rational(const Rational& q) const;
    FieldElem from_int(long v) const;

    // zeta^k reduced mod Phi_N (k may be any integer).
    FieldElem zeta_power(long k) const;

    // omega_p = zeta^{N/2p} + zeta^{-N/2p}; requires 2p | N.
    FieldElem omega(long p) const;

    // Order whose omega is used when printing elements in the w-power
    // basis.  0 means plain zeta-basis printing.
    long primary_omega_order() const noexcept { return primary_omega_; }
    void set_primary_omega_order(long p) const;

private:
    explicit CyclotomicField(long conductor);

    long conductor_;
    long degree_;
    std::vector<Integer> modulus_;                 // Phi_N, monic
    std::vector<std::vector<Rational>> reduction_; // x^(degree+j) mod Phi_N
    std::vector<std::complex<double>> zeta_pow_;   // zeta^j, j < degree
    mutable long primary_omega_ = 0;

    friend class FieldElem;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

// One element of Q(zeta_N): a rational coefficient vector of length
// phi(N) representing a residue mod Phi_N.  Immutable value type.
class FieldElem {
public:
    FieldElem() = default; // null element; only assignment is valid

    const FieldPtr& field() const noexcept { return field_; }
    const std::vector<Rational>& coords() const noexcept { return coords_; }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    bool is_rational() const noexcept;
    // Defined only when is_rational().
    Rational rational_value() const;

    FieldElem operator-() const;
    FieldElem operator+(const FieldElem& rhs) const;
    FieldElem operator-(const FieldElem& rhs) const;
    FieldElem operator*(const FieldElem& rhs) const;
    // Throws std::domain_error on division by zero.
    FieldElem operator/(const FieldElem& rhs) const;
    FieldElem inverse() const;
    FieldElem pow(long e) const;

    bool operator==(const FieldElem& rhs) const;
    bool operator!=(const FieldElem& rhs) const { return !(*this == rhs); }

    // Numeric value under zeta -> exp(2*pi*i/N).  Throws std::domain_error
    // if the imaginary part of the evaluation exceeds 1e-9.
    double embed_real() const;
    std::complex<double> embed_complex() const;

    // Coordinates of this element in the power basis 1, w, ..., w^{m-1} of
    // the subfield Q(w), w = omega(p).  nullopt when the element lies
    // outside that subfield.
    std::optional<std::vector<Rational>> omega_basis(long p) const;

    // Canonical text form; parse() inverts it bit-exactly within the same
    // field.  Uses the field's primary omega for w-basis printing when the
    // element lies in that subfield.
    std::string to_string() const;
    static FieldElem parse(const std::string& text, const FieldPtr& field);

    static FieldElem make(FieldPtr field, std::vector<Rational> coords);

private:
    FieldPtr field_;
    std::vector<Rational> coords_;

    // arithmetic results are already canonical; skip the normalization pass
    static FieldElem make_normalized(const FieldPtr& field, std::vector<Rational> coords);
    void require_same_field(const FieldElem& rhs) const;
};

// Convenience free functions mirroring the operation table.
enum class ArithOp { Add, Sub, Mul, Div };
FieldElem arith(const FieldElem& a, const FieldElem& b, ArithOp op);

} // namespace orbicluster
