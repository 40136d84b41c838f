#include "ffapprox/xpoly.hpp"

#include <algorithm>
#include <numeric>

namespace ffa {

XPoly::XPoly(FieldPtr field, std::vector<TPoly> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    trim();
}

void XPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

XPoly XPoly::x(FieldPtr field) { return monomial(TPoly::constant(field, 1), 1); }

XPoly XPoly::constant(const TPoly& c) { return XPoly(c.field(), {c}); }

XPoly XPoly::monomial(const TPoly& c, int k) {
    std::vector<TPoly> v(static_cast<std::size_t>(k) + 1, TPoly(c.field()));
    v[k] = c;
    return XPoly(c.field(), std::move(v));
}

XPoly XPoly::linear(const TPoly& v, const TPoly& u) { return XPoly(v.field(), {-u, v}); }

int XPoly::height_exponent() const {
    if (is_zero()) throw Error(ErrorKind::ZeroPolynomial, "height of the zero polynomial");
    int h = 0;
    for (const auto& a : c_) h = std::max(h, a.degree());
    return h;
}

XPoly XPoly::operator-() const {
    XPoly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
}

XPoly operator+(const XPoly& a, const XPoly& b) {
    std::vector<TPoly> v(std::max(a.c_.size(), b.c_.size()), TPoly(a.field_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return XPoly(a.field_, std::move(v));
}

XPoly operator-(const XPoly& a, const XPoly& b) { return a + (-b); }

XPoly operator*(const XPoly& a, const XPoly& b) {
    if (a.is_zero() || b.is_zero()) return XPoly(a.field_);
    std::vector<TPoly> v(a.c_.size() + b.c_.size() - 1, TPoly(a.field_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return XPoly(a.field_, std::move(v));
}

XPoly XPoly::times(const TPoly& c) const {
    std::vector<TPoly> v;
    v.reserve(c_.size());
    for (const auto& a : c_) v.push_back(a * c);
    return XPoly(field_, std::move(v));
}

XPoly XPoly::scaled(Elem c) const {
    std::vector<TPoly> v;
    v.reserve(c_.size());
    for (const auto& a : c_) v.push_back(a.scaled(c));
    return XPoly(field_, std::move(v));
}

XPoly XPoly::derivative() const {
    if (c_.size() <= 1) return XPoly(field_);
    std::vector<TPoly> v;
    for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i].scaled(field_->from_int(static_cast<std::int64_t>(i))));
    return XPoly(field_, std::move(v));
}

XPoly XPoly::pow(unsigned k) const {
    XPoly result = constant(TPoly::constant(field_, 1));
    XPoly base = *this;
    while (k) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k) base = base * base;
    }
    return result;
}

TPoly XPoly::content() const {
    if (is_zero()) throw Error(ErrorKind::ZeroPolynomial, "content of the zero polynomial");
    TPoly g(field_);
    for (const auto& a : c_) {
        if (a.is_zero()) continue;
        g = g.is_zero() ? a.monic() : gcd(g, a);
        if (g.is_one()) break;
    }
    return g;
}

XPoly XPoly::primitive_part() const {
    const TPoly g = content();
    std::vector<TPoly> v;
    v.reserve(c_.size());
    for (const auto& a : c_) v.push_back(divmod(a, g).first);
    XPoly r(field_, std::move(v));
    return r.scaled(field_->inv(r.lead().lead()));
}

bool operator<(const XPoly& a, const XPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        if (a.c_[i] == b.c_[i]) continue;
        return a.c_[i] < b.c_[i];
    }
    return false;
}

std::string XPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const TPoly& a = c_[i];
        if (a.is_zero()) continue;
        if (!out.empty()) out += '+';
        const std::string s = a.to_string();
        if (i == 0) {
            out += a.degree() <= 0 && s.find('g') == std::string::npos ? s : "(" + s + ")";
            continue;
        }
        if (!a.is_one()) out += "(" + s + ")*";
        out += 'X';
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

std::optional<XPoly> series_minpoly(const LaurentSeries& xi) {
    if (!xi.source()) return std::nullopt;
    auto m = xi.source()->minimal_polynomial();
    if (!m) return std::nullopt;
    return XPoly(xi.field(), *m);
}

LaurentSeries xp_eval(const XPoly& P, const LaurentSeries& xi) {
    if (P.is_zero()) return LaurentSeries::zero(P.field());
    LaurentSeries r = LaurentSeries::from_tpoly(P.lead());
    for (int i = P.degree() - 1; i >= 0; --i) r = r * xi + LaurentSeries::from_tpoly(P.coeffs()[i]);
    if (r.known_nonzero() || r.is_exact()) return r;
    if (auto m = series_minpoly(xi); m && m->degree() >= 1 && divides(*m, P)) return LaurentSeries::zero(P.field());
    return r;
}

LaurentSeries xp_eval_certified(const XPoly& P, LaurentSeries& xi, const PrecisionBudget& budget) {
    for (;;) {
        LaurentSeries r = xp_eval(P, xi);
        if (r.known_nonzero() || r.is_exact()) return r;
        if (!xi.source()) throw PrecisionError("evaluation below precision", xi.prec());
        const std::int64_t target = std::max<std::int64_t>(2 * xi.prec(), 16);
        if (xi.prec() >= budget.max_terms) throw PrecisionError("evaluation below precision", xi.prec());
        xi = xi.extended(std::min(target, budget.max_terms), budget);
    }
}

XPoly pseudo_remainder(const XPoly& A, const XPoly& B) {
    if (B.is_zero()) throw Error(ErrorKind::DivisionByZero, "pseudo-remainder by zero");
    if (B.degree() == 0) return XPoly(A.field());
    XPoly r = A;
    const TPoly& lb = B.lead();
    while (!r.is_zero() && r.degree() >= B.degree()) {
        const XPoly t = XPoly::monomial(r.lead(), r.degree() - B.degree());
        r = r.times(lb) - t * B;
    }
    return r;
}

bool divides(const XPoly& B, const XPoly& A) {
    if (A.is_zero()) return true;
    if (B.is_zero()) return false;
    return pseudo_remainder(A, B).is_zero();
}

XPoly divexact(const XPoly& A, const XPoly& B) {
    if (B.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero polynomial");
    XPoly r = A;
    std::vector<TPoly> q(static_cast<std::size_t>(std::max(A.degree() - B.degree() + 1, 0)), TPoly(A.field()));
    while (!r.is_zero() && r.degree() >= B.degree()) {
        auto [c, rem] = divmod(r.lead(), B.lead());
        if (!rem.is_zero()) throw Error(ErrorKind::InvalidArgument, "inexact division in F_q[T][X]");
        const int k = r.degree() - B.degree();
        q[k] = c;
        r = r - XPoly::monomial(c, k) * B;
    }
    if (!r.is_zero()) throw Error(ErrorKind::InvalidArgument, "inexact division in F_q[T][X]");
    return XPoly(A.field(), std::move(q));
}

XPoly xp_gcd(const XPoly& A, const XPoly& B) {
    if (A.is_zero() && B.is_zero()) throw Error(ErrorKind::BothZero, "gcd(0, 0)");
    if (A.is_zero()) return B.primitive_part();
    if (B.is_zero()) return A.primitive_part();
    XPoly a = A.primitive_part(), b = B.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        if (b.degree() == 0) return XPoly::constant(TPoly::constant(A.field(), 1));
        XPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.is_zero() ? r : r.primitive_part();
    }
    return a.primitive_part();
}

namespace {

int support_gcd(const XPoly& P) {
    int d = 0;
    for (int i = 1; i <= P.degree(); ++i)
        if (!P.coeffs()[i].is_zero()) d = std::gcd(d, i);
    return d;
}

}  // namespace

SeparabilityFlags xp_separability(const XPoly& P) {
    if (P.is_constant()) throw Error(ErrorKind::ConstantPolynomial, "separability of a polynomial constant in X");
    SeparabilityFlags flags;
    flags.p_reduced = support_gcd(P) % P.field()->p() != 0;
    const XPoly d = P.derivative();
    flags.separable = !d.is_zero() && xp_gcd(P, d).degree() == 0;
    return flags;
}

bool xp_is_separable(const XPoly& P) { return xp_separability(P).separable; }

std::pair<int, XPoly> xp_insep_decompose(const XPoly& P) {
    if (P.is_constant()) throw Error(ErrorKind::ConstantPolynomial, "decomposition of a polynomial constant in X");
    const int p = P.field()->p();
    int d = support_gcd(P);
    int j = 0, pj = 1;
    while (d % p == 0) {
        d /= p;
        pj *= p;
        ++j;
    }
    std::vector<TPoly> v;
    for (int i = 0; i <= P.degree(); i += pj) v.push_back(P.coeffs()[i]);
    return {j, XPoly(P.field(), std::move(v))};
}

XPoly xp_coeff_cartier(const XPoly& P, int s, int j) {
    std::vector<TPoly> v;
    v.reserve(P.coeffs().size());
    for (const auto& a : P.coeffs()) v.push_back(a.cartier(s, j));
    return XPoly(P.field(), std::move(v));
}

XPoly xp_frobenius_lift(const XPoly& P) {
    const int p = P.field()->p();
    std::vector<TPoly> v;
    for (const auto& a : P.coeffs()) v.push_back(a.frobenius_coeffs().substitute_power(p));
    return XPoly(P.field(), std::move(v));
}

XPoly xp_substitute_t_power(const XPoly& P) {
    const int p = P.field()->p();
    std::vector<TPoly> v;
    for (const auto& a : P.coeffs()) v.push_back(a.substitute_power(p));
    return XPoly(P.field(), std::move(v));
}

XPoly xp_coeff_pth_power(const XPoly& P) {
    const auto p = static_cast<std::uint64_t>(P.field()->p());
    std::vector<TPoly> v;
    for (const auto& a : P.coeffs()) v.push_back(a.pow(p));
    return XPoly(P.field(), std::move(v));
}

XPoly xp_expand_frobenius_X(const XPoly& P) {
    if (P.is_zero()) return P;
    const int p = P.field()->p();
    std::vector<TPoly> v(static_cast<std::size_t>(P.degree()) * p + 1, TPoly(P.field()));
    for (int i = 0; i <= P.degree(); ++i) v[static_cast<std::size_t>(i) * p] = P.coeffs()[i];
    return XPoly(P.field(), std::move(v));
}

}  // namespace ffa
