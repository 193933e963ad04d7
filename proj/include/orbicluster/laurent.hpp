#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbicluster/cyclotomic.hpp"

namespace orbicluster {

using ExpVec = std::vector<int>;

// Graded lexicographic order on integer exponent vectors.  Any fixed
// monomial order works for the exact divisions below; this one is the
// declared convention.
struct GradedLex {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        long da = 0, db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

// Sparse multivariate Laurent polynomial over a cyclotomic field.  Stored
// coefficients are never zero (canonical form); exponents may be negative.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(int arity, FieldPtr field);

    static LaurentPoly zero(int arity, const FieldPtr& field);
    static LaurentPoly constant(int arity, const FieldElem& value);
    // x_i as a polynomial (exponent +1 on variable i).
    static LaurentPoly variable(int arity, const FieldPtr& field, int i, int exponent = 1);
    static LaurentPoly monomial(int arity, const FieldElem& coeff, const ExpVec& exps);

    int arity() const noexcept { return arity_; }
    const FieldPtr& field() const noexcept { return field_; }
    const std::map<ExpVec, FieldElem, GradedLex>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    size_t term_count() const noexcept { return terms_.size(); }

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& rhs) const;
    LaurentPoly operator-(const LaurentPoly& rhs) const;
    LaurentPoly operator*(const LaurentPoly& rhs) const;
    LaurentPoly operator*(const FieldElem& c) const;
    LaurentPoly pow(long e) const; // e >= 0, or monomial base for e < 0
    bool operator==(const LaurentPoly& rhs) const;
    bool operator!=(const LaurentPoly& rhs) const { return !(*this == rhs); }

    // Multiply by the monomial x^shift.
    LaurentPoly shifted(const ExpVec& shift) const;

    // Largest bit-size over numerators and denominators of all rational
    // coordinates; a crude but monotone height measure.
    size_t coeff_height_bits() const;

    // Evaluate at real points (one value per variable).
    double eval(const std::vector<double>& point) const;

    std::string to_string(const std::vector<std::string>& names) const;
    static LaurentPoly parse(const std::string& text, const std::vector<std::string>& names,
                             const FieldPtr& field);

    void add_term(const ExpVec& e, const FieldElem& c); // builder; keeps canonical form

    // *this -= c * x^shift * g, in place.
    void sub_scaled(const LaurentPoly& g, const FieldElem& c, const ExpVec& shift);

private:
    int arity_ = 0;
    FieldPtr field_;
    std::map<ExpVec, FieldElem, GradedLex> terms_;

    void require_compatible(const LaurentPoly& rhs) const;
};

// Thrown when a division that the Laurent phenomenon promises to be exact
// leaves a remainder.
struct InexactDivision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact quotient f / g.  Strips the monomial content of g, runs
// single-divisor multivariate division under GradedLex and insists on a
// zero remainder; throws InexactDivision otherwise.
LaurentPoly exact_divide(const LaurentPoly& f, const LaurentPoly& g);

enum class PolyOp { Add, Sub, Mul };
LaurentPoly poly_arith(const LaurentPoly& f, const LaurentPoly& g, PolyOp op);

// Substitute assignment[i] for variable i (empty entries keep the
// variable).  Values must be Laurent-invertible (monomials) wherever f has
// negative exponents; general values are routed through the
// clear-substitute-divide procedure.
LaurentPoly substitute(const LaurentPoly& f, const std::vector<LaurentPoly>& assignment);

struct CoefficientPositivity {
    ExpVec exponents;
    bool embed_positive = false;
    bool nonneg_integer_cone = false;
};

struct PositivityReport {
    bool all_embed_positive = true;
    bool all_nonneg_integer_cone = true;
    std::vector<CoefficientPositivity> coefficients;
};

// Positivity in the two senses the conjecture admits: positivity of the
// real embedding (primary) and membership in the nonnegative-integer cone
// on the power basis of some omega_p, p from orders (reported alongside).
PositivityReport positivity_report(const LaurentPoly& f, const std::vector<long>& orders);

} // namespace orbicluster
