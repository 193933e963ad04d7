#include "orbicluster/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace orbicluster {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Exact division of integer polynomials, quotient known to be integral.
// a and b in ascending-degree order, b monic at top.
std::vector<Integer> poly_divide_exact(std::vector<Integer> a, const std::vector<Integer>& b) {
    const long db = static_cast<long>(b.size()) - 1;
    const long da = static_cast<long>(a.size()) - 1;
    std::vector<Integer> q(da - db + 1, Integer(0));
    for (long d = da; d >= db; --d) {
        Integer c = a[d];
        if (c == 0) continue;
        q[d - db] = c;
        for (long j = 0; j <= db; ++j) a[d - db + j] -= c * b[j];
    }
    for (const auto& c : a)
        if (c != 0) throw std::logic_error("poly_divide_exact: nonzero remainder");
    return q;
}

long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

} // namespace

std::vector<Integer> cyclotomic_polynomial(long N) {
    if (N < 1) throw std::invalid_argument("cyclotomic_polynomial: N must be positive");
    // x^N - 1 divided by Phi_d for every proper divisor d of N.
    std::vector<Integer> num(N + 1, Integer(0));
    num[0] = -1;
    num[N] = 1;
    for (long d = 1; d < N; ++d) {
        if (N % d == 0) num = poly_divide_exact(std::move(num), cyclotomic_polynomial(d));
    }
    return num;
}

CyclotomicField::CyclotomicField(long conductor) : conductor_(conductor) {
    modulus_ = cyclotomic_polynomial(conductor);
    degree_ = static_cast<long>(modulus_.size()) - 1;
    if (degree_ != euler_phi(conductor))
        throw std::logic_error("cyclotomic modulus degree mismatch");

    // Reduction rows: x^(degree + j) mod Phi for j = 0 .. degree-2, enough
    // to reduce any product of two residues.
    const long n = degree_;
    std::vector<Rational> row(n);
    for (long i = 0; i < n; ++i) row[i] = -Rational(modulus_[i]); // x^n = -(lower part)
    reduction_.push_back(row);
    for (long j = 1; j + n <= 2 * n - 2; ++j) {
        std::vector<Rational> next(n, Rational(0));
        // multiply previous row by x, then reduce the overflow term
        const Rational top = reduction_.back()[n - 1];
        for (long i = n - 1; i >= 1; --i) next[i] = reduction_.back()[i - 1];
        next[0] = 0;
        if (top != 0)
            for (long i = 0; i < n; ++i) next[i] += top * reduction_[0][i];
        reduction_.push_back(std::move(next));
    }

    zeta_pow_.resize(n);
    for (long j = 0; j < n; ++j) {
        double ang = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(conductor);
        zeta_pow_[j] = {std::cos(ang), std::sin(ang)};
    }
}

std::shared_ptr<const CyclotomicField> CyclotomicField::make(long conductor) {
    return std::shared_ptr<const CyclotomicField>(new CyclotomicField(conductor));
}

std::shared_ptr<const CyclotomicField> CyclotomicField::for_orders(const std::vector<long>& orders) {
    long N = 1;
    for (long p : orders) {
        if (p < 2) throw std::invalid_argument("orbifold order must be >= 2");
        N = std::lcm(N, 2 * p);
    }
    auto field = make(N);
    if (orders.size() == 1) field->set_primary_omega_order(orders[0]);
    return field;
}

void CyclotomicField::set_primary_omega_order(long p) const {
    if (p != 0 && (2 * p == 0 || conductor_ % (2 * p) != 0))
        throw std::invalid_argument("primary omega order not housed in this field");
    primary_omega_ = p;
}

FieldElem CyclotomicField::zero() const {
    return FieldElem::make(shared_from_this(), std::vector<Rational>(degree_, Rational(0)));
}

FieldElem CyclotomicField::one() const { return from_rational(Rational(1)); }

FieldElem CyclotomicField::from_rational(const Rational& q) const {
    std::vector<Rational> c(degree_, Rational(0));
    c[0] = q;
    // conductor 1: zeta = 1, Phi_1 = x - 1, basis {1} as well
    return FieldElem::make(shared_from_this(), std::move(c));
}

FieldElem CyclotomicField::from_int(long v) const { return from_rational(Rational(v)); }

FieldElem CyclotomicField::zeta_power(long k) const {
    k %= conductor_;
    if (k < 0) k += conductor_;
    // represent x^k and reduce
    if (k < degree_) {
        std::vector<Rational> c(degree_, Rational(0));
        c[k] = 1;
        return FieldElem::make(shared_from_this(), std::move(c));
    }
    // repeated multiply-by-x starting at x^(degree-1)
    std::vector<Rational> c(degree_, Rational(0));
    c[degree_ - 1] = 1;
    for (long step = degree_ - 1; step < k; ++step) {
        Rational top = c[degree_ - 1];
        for (long i = degree_ - 1; i >= 1; --i) c[i] = c[i - 1];
        c[0] = 0;
        if (top != 0)
            for (long i = 0; i < degree_; ++i) c[i] += top * reduction_[0][i];
    }
    return FieldElem::make(shared_from_this(), std::move(c));
}

FieldElem CyclotomicField::omega(long p) const {
    if (p < 2) throw std::invalid_argument("omega: order must be >= 2");
    if (conductor_ % (2 * p) != 0)
        throw std::domain_error("omega: conductor does not house 2cos(pi/" + std::to_string(p) + ")");
    long e = conductor_ / (2 * p);
    return zeta_power(e) + zeta_power(-e);
}

FieldElem FieldElem::make(FieldPtr field, std::vector<Rational> coords) {
    FieldElem e;
    e.field_ = std::move(field);
    e.coords_ = std::move(coords);
    for (auto& c : e.coords_) c.canonicalize();
    return e;
}

FieldElem FieldElem::make_normalized(const FieldPtr& field, std::vector<Rational> coords) {
    FieldElem e;
    e.field_ = field;
    e.coords_ = std::move(coords);
    return e;
}

void FieldElem::require_same_field(const FieldElem& rhs) const {
    if (!field_ || !rhs.field_ || field_->conductor() != rhs.field_->conductor())
        throw std::invalid_argument("field mismatch");
}

bool FieldElem::is_zero() const noexcept {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool FieldElem::is_one() const noexcept {
    if (coords_.empty() || coords_[0] != 1) return false;
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

bool FieldElem::is_rational() const noexcept {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return !coords_.empty();
}

Rational FieldElem::rational_value() const {
    if (!is_rational()) throw std::domain_error("element is not rational");
    return coords_[0];
}

FieldElem FieldElem::operator-() const {
    std::vector<Rational> c(coords_);
    for (auto& x : c) x = -x;
    return make_normalized(field_, std::move(c));
}

FieldElem FieldElem::operator+(const FieldElem& rhs) const {
    require_same_field(rhs);
    std::vector<Rational> c(coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += rhs.coords_[i];
    return make_normalized(field_, std::move(c));
}

FieldElem FieldElem::operator-(const FieldElem& rhs) const {
    require_same_field(rhs);
    std::vector<Rational> c(coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= rhs.coords_[i];
    return make_normalized(field_, std::move(c));
}

FieldElem FieldElem::operator*(const FieldElem& rhs) const {
    require_same_field(rhs);
    const long n = field_->degree_;
    // rational factors only scale the coordinate vector
    if (is_rational()) {
        if (coords_[0] == 0) return field_->zero();
        std::vector<Rational> c(rhs.coords_);
        for (auto& x : c) x *= coords_[0];
        return make_normalized(field_, std::move(c));
    }
    if (rhs.is_rational()) return rhs * *this;
    std::vector<Rational> conv(2 * n - 1, Rational(0));
    for (long i = 0; i < n; ++i) {
        if (coords_[i] == 0) continue;
        for (long j = 0; j < n; ++j) {
            if (rhs.coords_[j] == 0) continue;
            conv[i + j] += coords_[i] * rhs.coords_[j];
        }
    }
    std::vector<Rational> c(conv.begin(), conv.begin() + n);
    for (long k = n; k <= 2 * n - 2; ++k) {
        if (conv[k] == 0) continue;
        const auto& row = field_->reduction_[k - n];
        for (long i = 0; i < n; ++i) {
            if (row[i] != 0) c[i] += conv[k] * row[i];
        }
    }
    return make_normalized(field_, std::move(c));
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    // extended Euclid in Q[x] against the (irreducible) modulus
    const long n = field_->degree_;
    std::vector<Rational> r0(field_->modulus_.size());
    for (size_t i = 0; i < field_->modulus_.size(); ++i) r0[i] = Rational(field_->modulus_[i]);
    std::vector<Rational> r1(coords_);
    std::vector<Rational> s0(1, Rational(0)), s1(1, Rational(1)); // Bezout coefficients for this element

    auto deg = [](const std::vector<Rational>& p) -> long {
        for (long d = static_cast<long>(p.size()) - 1; d >= 0; --d)
            if (p[d] != 0) return d;
        return -1;
    };
    auto trim = [&](std::vector<Rational>& p) { p.resize(std::max<long>(deg(p) + 1, 1)); };
    trim(r1);

    while (deg(r1) > 0) {
        // divide r0 by r1
        std::vector<Rational> rem = r0;
        long dr = deg(rem), d1 = deg(r1);
        std::vector<Rational> q(std::max<long>(dr - d1 + 1, 1), Rational(0));
        while (dr >= d1 && dr >= 0) {
            Rational c = rem[dr] / r1[d1];
            q[dr - d1] = c;
            for (long j = 0; j <= d1; ++j) rem[dr - d1 + j] -= c * r1[j];
            dr = deg(rem);
        }
        trim(rem);
        // s_{k+1} = s_{k-1} - q * s_k
        std::vector<Rational> s2(std::max(s0.size(), q.size() + s1.size()), Rational(0));
        for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (deg(r1) != 0 || r1[0] == 0)
        throw std::logic_error("modulus not coprime to element"); // cannot happen: Phi_N irreducible
    Rational inv_c = Rational(1) / r1[0];
    std::vector<Rational> c(n, Rational(0));
    for (size_t i = 0; i < s1.size() && i < static_cast<size_t>(n); ++i) c[i] = s1[i] * inv_c;
    return make(field_, std::move(c));
}

FieldElem FieldElem::operator/(const FieldElem& rhs) const { return *this * rhs.inverse(); }

FieldElem FieldElem::pow(long e) const {
    FieldElem base = e < 0 ? inverse() : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    FieldElem acc = field_->one();
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool FieldElem::operator==(const FieldElem& rhs) const {
    if (!field_ || !rhs.field_) return !field_ && !rhs.field_;
    if (field_->conductor() != rhs.field_->conductor()) return false;
    return coords_ == rhs.coords_;
}

std::complex<double> FieldElem::embed_complex() const {
    std::complex<double> acc(0.0, 0.0);
    for (size_t j = 0; j < coords_.size(); ++j) {
        if (coords_[j] == 0) continue;
        acc += coords_[j].get_d() * field_->zeta_pow_[j];
    }
    return acc;
}

double FieldElem::embed_real() const {
    auto z = embed_complex();
    if (std::abs(z.imag()) > 1e-9)
        throw std::domain_error("embed_real: element is not real");
    return z.real();
}

std::optional<std::vector<Rational>> FieldElem::omega_basis(long p) const {
    if (p < 2) {
        return is_rational() ? std::optional<std::vector<Rational>>({coords_[0]}) : std::nullopt;
    }
    if (field_->conductor() % (2 * p) != 0) return std::nullopt;
    const long n = field_->degree_;
    FieldElem w = field_->omega(p);
    // degree of Q(2cos(pi/p)) over Q
    long m = std::max<long>(euler_phi(2 * p) / 2, 1);
    // solve [1 w w^2 ... w^{m-1}] * c = this over Q by Gaussian elimination
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(m + 1, Rational(0)));
    FieldElem wp = field_->one();
    for (long j = 0; j < m; ++j) {
        for (long i = 0; i < n; ++i) A[i][j] = wp.coords()[i];
        wp = wp * w;
    }
    for (long i = 0; i < n; ++i) A[i][m] = coords_[i];

    std::vector<long> pivot_col(n, -1);
    long row = 0;
    for (long col = 0; col < m && row < n; ++col) {
        long sel = -1;
        for (long i = row; i < n; ++i)
            if (A[i][col] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(A[sel], A[row]);
        Rational inv = Rational(1) / A[row][col];
        for (long j = col; j <= m; ++j) A[row][j] *= inv;
        for (long i = 0; i < n; ++i) {
            if (i == row || A[i][col] == 0) continue;
            Rational f = A[i][col];
            for (long j = col; j <= m; ++j) A[i][j] -= f * A[row][j];
        }
        pivot_col[row] = col;
        ++row;
    }
    // consistency: rows past the pivots must have zero rhs
    for (long i = row; i < n; ++i)
        if (A[i][m] != 0) return std::nullopt;
    std::vector<Rational> out(m, Rational(0));
    for (long i = 0; i < row; ++i)
        if (pivot_col[i] >= 0) out[pivot_col[i]] = A[i][m];
    return out;
}

namespace {

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

// prints c0 + c1*sym + c2*sym^2 ... skipping zeros
std::string basis_poly_str(const std::vector<Rational>& c, const char* sym) {
    std::string out;
    bool first = true;
    for (size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0) continue;
        Rational a = c[j];
        if (first) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        bool need_coeff = (j == 0) || a != 1;
        if (need_coeff) out += rational_str(a);
        if (j > 0) {
            if (need_coeff) out += "*";
            out += sym;
            if (j > 1) out += "^" + std::to_string(j);
        }
    }
    if (first) out = "0";
    return out;
}

} // namespace

std::string FieldElem::to_string() const {
    if (is_rational()) return rational_str(coords_[0]);
    long p = field_->primary_omega_order();
    if (p >= 2) {
        if (auto wb = omega_basis(p)) return "(" + basis_poly_str(*wb, "w") + ")";
    }
    return "(" + basis_poly_str(coords_, "z") + ")";
}

FieldElem FieldElem::parse(const std::string& text, const FieldPtr& field) {
    // grammar: rational | '(' term (('+'|'-') term)* ')' with
    // term = rational ['*' sym ['^' k]] | sym ['^' k], sym in {w, z}
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
    auto parse_rational = [&]() -> Rational {
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
        if (pos == start) throw std::invalid_argument("FieldElem::parse: expected number in '" + text + "'");
        return Rational(text.substr(start, pos - start));
    };

    skip_ws();
    if (pos < text.size() && text[pos] != '(') {
        Rational q = parse_rational();
        q.canonicalize();
        skip_ws();
        if (pos != text.size()) throw std::invalid_argument("FieldElem::parse: trailing input in '" + text + "'");
        return field->from_rational(q);
    }
    if (pos >= text.size()) throw std::invalid_argument("FieldElem::parse: empty input");
    ++pos; // '('
    FieldElem acc = field->zero();
    bool first = true;
    while (true) {
        skip_ws();
        if (pos >= text.size()) throw std::invalid_argument("FieldElem::parse: unterminated '('");
        if (text[pos] == ')') { ++pos; break; }
        int sign = 1;
        if (!first || text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '+') ++pos;
            else if (text[pos] == '-') { sign = -1; ++pos; }
            else if (!first) throw std::invalid_argument("FieldElem::parse: expected +/- in '" + text + "'");
        }
        skip_ws();
        Rational coeff(1);
        bool have_coeff = false;
        if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])))) {
            coeff = parse_rational();
            have_coeff = true;
        }
        skip_ws();
        if (pos < text.size() && text[pos] == '*') { ++pos; skip_ws(); }
        long expo = 0;
        char sym = 0;
        if (pos < text.size() && (text[pos] == 'w' || text[pos] == 'z')) {
            sym = text[pos];
            ++pos;
            expo = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                size_t start = pos;
                if (pos < text.size() && text[pos] == '-') ++pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                expo = std::stol(text.substr(start, pos - start));
            }
        } else if (!have_coeff) {
            throw std::invalid_argument("FieldElem::parse: expected term in '" + text + "'");
        }
        coeff.canonicalize();
        FieldElem term = field->from_rational(sign < 0 ? Rational(-coeff) : coeff);
        if (sym == 'w') {
            long p = field->primary_omega_order();
            if (p < 2) throw std::invalid_argument("FieldElem::parse: 'w' used but field has no primary omega");
            term = term * field->omega(p).pow(expo);
        } else if (sym == 'z') {
            term = term * field->zeta_power(expo);
        }
        acc = acc + term;
        first = false;
    }
    skip_ws();
    if (pos != text.size()) throw std::invalid_argument("FieldElem::parse: trailing input in '" + text + "'");
    return acc;
}

FieldElem arith(const FieldElem& a, const FieldElem& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div: return a / b;
    }
    throw std::logic_error("unreachable");
}

} // namespace orbicluster
