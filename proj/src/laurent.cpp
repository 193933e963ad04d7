#include "orbicluster/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace orbicluster {

LaurentPoly::LaurentPoly(int arity, FieldPtr field) : arity_(arity), field_(std::move(field)) {}

LaurentPoly LaurentPoly::zero(int arity, const FieldPtr& field) { return LaurentPoly(arity, field); }

LaurentPoly LaurentPoly::constant(int arity, const FieldElem& value) {
    LaurentPoly p(arity, value.field());
    p.add_term(ExpVec(arity, 0), value);
    return p;
}

LaurentPoly LaurentPoly::variable(int arity, const FieldPtr& field, int i, int exponent) {
    LaurentPoly p(arity, field);
    ExpVec e(arity, 0);
    e.at(i) = exponent;
    p.add_term(e, field->one());
    return p;
}

LaurentPoly LaurentPoly::monomial(int arity, const FieldElem& coeff, const ExpVec& exps) {
    LaurentPoly p(arity, coeff.field());
    p.add_term(exps, coeff);
    return p;
}

void LaurentPoly::add_term(const ExpVec& e, const FieldElem& c) {
    if (static_cast<int>(e.size()) != arity_) throw std::invalid_argument("exponent arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        FieldElem sum = it->second + c;
        if (sum.is_zero()) terms_.erase(it);
        else it->second = std::move(sum);
    }
}

void LaurentPoly::require_compatible(const LaurentPoly& rhs) const {
    if (arity_ != rhs.arity_) throw std::invalid_argument("polynomial arity mismatch");
}

void LaurentPoly::sub_scaled(const LaurentPoly& g, const FieldElem& c, const ExpVec& shift) {
    require_compatible(g);
    ExpVec e(arity_);
    for (const auto& [ge, gc] : g.terms_) {
        for (int i = 0; i < arity_; ++i) e[i] = ge[i] + shift[i];
        add_term(e, -(gc * c));
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out(arity_, field_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& rhs) const {
    require_compatible(rhs);
    LaurentPoly out = *this;
    if (!out.field_) out.field_ = rhs.field_;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& rhs) const {
    require_compatible(rhs);
    LaurentPoly out = *this;
    if (!out.field_) out.field_ = rhs.field_;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, -c);
    return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& rhs) const {
    require_compatible(rhs);
    LaurentPoly out(arity_, field_ ? field_ : rhs.field_);
    ExpVec e(arity_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (int i = 0; i < arity_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

LaurentPoly LaurentPoly::operator*(const FieldElem& c) const {
    LaurentPoly out(arity_, field_);
    if (c.is_zero()) return out;
    for (const auto& [e, t] : terms_) out.terms_.emplace(e, t * c);
    return out;
}

LaurentPoly LaurentPoly::pow(long e) const {
    if (e < 0) {
        if (!is_monomial()) throw std::domain_error("negative power of a non-monomial");
        const auto& [exps, c] = *terms_.begin();
        ExpVec inv(arity_);
        for (int i = 0; i < arity_; ++i) inv[i] = -exps[i] * static_cast<int>(-e);
        return monomial(arity_, c.pow(e), inv);
    }
    LaurentPoly acc = constant(arity_, field_->one());
    LaurentPoly base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) acc = acc * base;
        if (k >>= 1) base = base * base;
    }
    return acc;
}

bool LaurentPoly::operator==(const LaurentPoly& rhs) const {
    if (arity_ != rhs.arity_ || terms_.size() != rhs.terms_.size()) return false;
    auto it = terms_.begin(), jt = rhs.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || !(it->second == jt->second)) return false;
    return true;
}

LaurentPoly LaurentPoly::shifted(const ExpVec& shift) const {
    LaurentPoly out(arity_, field_);
    ExpVec e(arity_);
    for (const auto& [ea, c] : terms_) {
        for (int i = 0; i < arity_; ++i) e[i] = ea[i] + shift[i];
        out.terms_.emplace(e, c);
    }
    return out;
}

size_t LaurentPoly::coeff_height_bits() const {
    size_t h = 0;
    for (const auto& [e, c] : terms_) {
        for (const auto& q : c.coords()) {
            h = std::max(h, mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
            h = std::max(h, mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
        }
    }
    return h;
}

double LaurentPoly::eval(const std::vector<double>& point) const {
    if (static_cast<int>(point.size()) != arity_) throw std::invalid_argument("eval point arity mismatch");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c.embed_real();
        for (int i = 0; i < arity_; ++i)
            if (e[i] != 0) t *= std::pow(point[i], e[i]);
        acc += t;
    }
    return acc;
}

std::string LaurentPoly::to_string(const std::vector<std::string>& names) const {
    if (static_cast<int>(names.size()) != arity_) throw std::invalid_argument("name list arity mismatch");
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << it->second.to_string();
        bool any = false;
        for (int i = 0; i < arity_; ++i) any = any || it->first[i] != 0;
        if (any) {
            os << " *";
            for (int i = 0; i < arity_; ++i) {
                if (it->first[i] == 0) continue;
                os << " " << names[i];
                if (it->first[i] != 1) os << "^" << it->first[i];
            }
        }
    }
    return os.str();
}

LaurentPoly LaurentPoly::parse(const std::string& text, const std::vector<std::string>& names,
                               const FieldPtr& field) {
    LaurentPoly out(static_cast<int>(names.size()), field);
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
    skip_ws();
    if (text.compare(pos, std::string::npos, "0") == 0) return out;
    while (pos < text.size()) {
        skip_ws();
        // coefficient: parenthesised field element or bare rational
        std::string coeff_text;
        if (text[pos] == '(') {
            size_t depth = 0, start = pos;
            do {
                if (text[pos] == '(') ++depth;
                if (text[pos] == ')') --depth;
                ++pos;
            } while (pos < text.size() && depth > 0);
            coeff_text = text.substr(start, pos - start);
        } else {
            size_t start = pos;
            if (text[pos] == '-' || text[pos] == '+') ++pos;
            while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
            coeff_text = text.substr(start, pos - start);
        }
        FieldElem coeff = FieldElem::parse(coeff_text, field);
        ExpVec e(names.size(), 0);
        skip_ws();
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            while (true) {
                skip_ws();
                size_t start = pos;
                while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
                if (pos == start) break;
                std::string nm = text.substr(start, pos - start);
                auto it = std::find(names.begin(), names.end(), nm);
                if (it == names.end()) throw std::invalid_argument("unknown variable '" + nm + "'");
                int expo = 1;
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    size_t s2 = pos;
                    if (pos < text.size() && text[pos] == '-') ++pos;
                    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                    expo = std::stoi(text.substr(s2, pos - s2));
                }
                e[it - names.begin()] += expo;
                skip_ws();
                if (pos >= text.size() || text[pos] == '+') break;
            }
        }
        out.add_term(e, coeff);
        skip_ws();
        if (pos >= text.size()) break;
        if (text[pos] != '+') throw std::invalid_argument("LaurentPoly::parse: expected '+' in '" + text + "'");
        ++pos;
    }
    return out;
}

LaurentPoly poly_arith(const LaurentPoly& f, const LaurentPoly& g, PolyOp op) {
    switch (op) {
        case PolyOp::Add: return f + g;
        case PolyOp::Sub: return f - g;
        case PolyOp::Mul: return f * g;
    }
    throw std::logic_error("unreachable");
}

LaurentPoly exact_divide(const LaurentPoly& f, const LaurentPoly& g) {
    if (g.is_zero()) throw std::domain_error("division by zero polynomial");
    const int n = f.arity();
    if (n != g.arity()) throw std::invalid_argument("polynomial arity mismatch");
    if (f.is_zero()) return f;

    // fast path: monomial divisor shifts exponents
    if (g.is_monomial()) {
        const auto& [ge, gc] = *g.terms().begin();
        ExpVec shift(n);
        for (int i = 0; i < n; ++i) shift[i] = -ge[i];
        return f.shifted(shift) * gc.inverse();
    }

    // strip monomial content so both operands are ordinary polynomials
    auto min_exps = [n](const LaurentPoly& p) {
        ExpVec m(n, 0);
        bool first = true;
        for (const auto& [e, c] : p.terms()) {
            (void)c;
            for (int i = 0; i < n; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
            first = false;
        }
        return m;
    };
    ExpVec mf = min_exps(f), mg = min_exps(g);
    ExpVec neg_mf(n), neg_mg(n), qshift(n);
    for (int i = 0; i < n; ++i) {
        neg_mf[i] = -mf[i];
        neg_mg[i] = -mg[i];
        qshift[i] = mf[i] - mg[i];
    }
    LaurentPoly r = f.shifted(neg_mf);
    LaurentPoly g0 = g.shifted(neg_mg);

    const auto glead = *g0.terms().rbegin(); // leading under GradedLex
    FieldElem glead_inv = glead.second.inverse();
    LaurentPoly q(n, f.field());
    ExpVec qe(n);
    while (!r.is_zero()) {
        const auto& rlead = *r.terms().rbegin();
        bool divisible = true;
        for (int i = 0; i < n; ++i) {
            qe[i] = rlead.first[i] - glead.first[i];
            if (qe[i] < 0) divisible = false;
        }
        if (!divisible)
            throw InexactDivision("exact_divide: remainder term survives division");
        FieldElem qc = rlead.second * glead_inv;
        q.add_term(qe, qc);
        r.sub_scaled(g0, qc, qe); // cancels the leading term of r exactly
    }
    return q.shifted(qshift);
}

LaurentPoly substitute(const LaurentPoly& f, const std::vector<LaurentPoly>& assignment) {
    const int n = f.arity();
    if (static_cast<int>(assignment.size()) != n)
        throw std::invalid_argument("assignment arity mismatch");
    // an empty (default-constructed) entry keeps the variable
    auto keeps = [&](int i) { return assignment[i].arity() == 0; };

    // Variables substituted by non-units must not occur with negative
    // exponents; otherwise clear those exponents first, substitute, and
    // divide back out by the substituted monomial image.
    ExpVec clear(n, 0);
    for (int i = 0; i < n; ++i) {
        if (keeps(i) || assignment[i].is_monomial()) continue;
        int min_e = 0;
        for (const auto& [e, c] : f.terms()) {
            (void)c;
            min_e = std::min(min_e, e[i]);
        }
        clear[i] = -min_e;
    }

    bool cleared = false;
    for (int i = 0; i < n; ++i) cleared = cleared || clear[i] != 0;
    LaurentPoly base = cleared ? f.shifted(clear) : f;

    LaurentPoly acc(n, f.field());
    for (const auto& [e, c] : base.terms()) {
        LaurentPoly term(n, f.field());
        ExpVec kept(n, 0);
        bool vanished = false;
        term = LaurentPoly::constant(n, c);
        for (int i = 0; i < n && !vanished; ++i) {
            if (e[i] == 0) continue;
            if (keeps(i)) {
                kept[i] = e[i];
                continue;
            }
            const LaurentPoly& v = assignment[i];
            if (v.is_zero()) {
                if (e[i] < 0)
                    throw std::domain_error("substitute: zero value at a negative exponent");
                vanished = true;
                continue;
            }
            term = term * v.pow(e[i]);
        }
        if (vanished) continue;
        acc = acc + term.shifted(kept);
    }
    if (!cleared) return acc;

    // divide by the image of the clearing monomial
    LaurentPoly divisor = LaurentPoly::constant(n, f.field()->one());
    for (int i = 0; i < n; ++i) {
        if (clear[i] == 0) continue;
        divisor = divisor * assignment[i].pow(clear[i]);
    }
    try {
        return exact_divide(acc, divisor);
    } catch (const InexactDivision&) {
        throw std::domain_error("substitute: non-invertible value at a negative exponent");
    }
}

PositivityReport positivity_report(const LaurentPoly& f, const std::vector<long>& orders) {
    PositivityReport rep;
    for (const auto& [e, c] : f.terms()) {
        CoefficientPositivity cp;
        cp.exponents = e;
        double v = 0.0;
        try {
            v = c.embed_real();
            cp.embed_positive = v > 0.0;
        } catch (const std::domain_error&) {
            cp.embed_positive = false;
        }
        cp.nonneg_integer_cone = false;
        auto cone_check = [&](const std::vector<Rational>& basis_coords) {
            for (const auto& q : basis_coords)
                if (q < 0 || q.get_den() != 1) return false;
            return true;
        };
        if (c.is_rational()) {
            cp.nonneg_integer_cone = cone_check({c.rational_value()});
        }
        if (!cp.nonneg_integer_cone) {
            for (long p : orders) {
                if (auto wb = c.omega_basis(p); wb && cone_check(*wb)) {
                    cp.nonneg_integer_cone = true;
                    break;
                }
            }
        }
        rep.all_embed_positive = rep.all_embed_positive && cp.embed_positive;
        rep.all_nonneg_integer_cone = rep.all_nonneg_integer_cone && cp.nonneg_integer_cone;
        rep.coefficients.push_back(std::move(cp));
    }
    return rep;
}

} // namespace orbicluster
