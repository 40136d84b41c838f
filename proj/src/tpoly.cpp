#include "ffapprox/tpoly.hpp"

#include <algorithm>
#include <sstream>

namespace ffa {

TPoly::TPoly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    for (Elem e : c_)
        if (e >= field_->q()) throw Error(ErrorKind::InvalidArgument, "coefficient code out of range");
    trim();
}

TPoly TPoly::constant(FieldPtr field, Elem c) { return TPoly(std::move(field), std::vector<Elem>{c}); }

TPoly TPoly::monomial(FieldPtr field, Elem c, int degree) {
    std::vector<Elem> v(static_cast<std::size_t>(degree) + 1, 0);
    v[degree] = c;
    return TPoly(std::move(field), std::move(v));
}

TPoly TPoly::random(FieldPtr field, int max_degree, SplitMix64& rng) {
    std::vector<Elem> v(static_cast<std::size_t>(std::max(max_degree, -1) + 1));
    for (auto& e : v) e = static_cast<Elem>(rng.below(field->q()));
    return TPoly(std::move(field), std::move(v));
}

void TPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void TPoly::check(const TPoly& o) const {
    if (field_ != o.field_ && !field_->same_as(*o.field_))
        throw Error(ErrorKind::SpecMismatch, "polynomials over different fields");
}

TPoly TPoly::operator-() const {
    TPoly r = *this;
    for (auto& e : r.c_) e = field_->neg(e);
    return r;
}

TPoly& TPoly::operator+=(const TPoly& o) {
    check(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->add(c_[i], o.c_[i]);
    trim();
    return *this;
}

TPoly& TPoly::operator-=(const TPoly& o) {
    check(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->sub(c_[i], o.c_[i]);
    trim();
    return *this;
}

TPoly operator*(const TPoly& a, const TPoly& b) {
    a.check(b);
    if (a.is_zero() || b.is_zero()) return TPoly(a.field_);
    const Field& f = *a.field_;
    std::vector<Elem> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    return TPoly(a.field_, std::move(r));
}

TPoly TPoly::scaled(Elem c) const {
    TPoly r = *this;
    for (auto& e : r.c_) e = field_->mul(e, c);
    r.trim();
    return r;
}

TPoly TPoly::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<Elem> v(static_cast<std::size_t>(k), 0);
    v.insert(v.end(), c_.begin(), c_.end());
    return TPoly(field_, std::move(v));
}

TPoly TPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(field_->inv(lead()));
}

TPoly TPoly::derivative() const {
    if (c_.size() <= 1) return TPoly(field_);
    std::vector<Elem> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = field_->mul(field_->from_int(static_cast<std::int64_t>(i)), c_[i]);
    return TPoly(field_, std::move(v));
}

TPoly TPoly::pow(std::uint64_t k) const {
    TPoly result = constant(field_, 1);
    TPoly base = *this;
    while (k) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k) base = base * base;
    }
    return result;
}

Elem TPoly::evaluate(Elem x) const {
    Elem acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_->add(field_->mul(acc, x), *it);
    return acc;
}

TPoly TPoly::substitute_power(int k) const {
    if (is_zero()) return *this;
    std::vector<Elem> v(static_cast<std::size_t>(degree()) * k + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
    return TPoly(field_, std::move(v));
}

TPoly TPoly::frobenius_coeffs() const {
    TPoly r = *this;
    for (auto& e : r.c_) e = field_->frobenius(e);
    return r;
}

TPoly TPoly::cartier(int s, int j) const {
    int pj = 1;
    for (int i = 0; i < j; ++i) pj *= field_->p();
    if (s < 0 || s >= pj) throw Error(ErrorKind::InvalidArgument, "Cartier index out of range");
    std::vector<Elem> v;
    for (int m = s; m < static_cast<int>(c_.size()); m += pj) {
        Elem c = c_[m];
        for (int i = 0; i < j; ++i) c = field_->pth_root(c);
        v.push_back(c);
    }
    return TPoly(field_, std::move(v));
}

bool operator<(const TPoly& a, const TPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

std::string TPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Elem c = c_[i];
        if (c == 0) continue;
        if (!first) os << '+';
        first = false;
        std::string cs = field_->format(c);
        if (cs.find('g') != std::string::npos) cs = "(" + cs + ")";
        if (i == 0) {
            os << cs;
            continue;
        }
        if (c != 1) os << cs << '*';
        os << 'T';
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

std::pair<TPoly, TPoly> divmod(const TPoly& a, const TPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    const Field& f = *a.field();
    std::vector<Elem> rem = a.coeffs();
    const auto& bc = b.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {TPoly(a.field()), a};
    std::vector<Elem> quo(static_cast<std::size_t>(a.degree() - db) + 1, 0);
    const Elem inv_lead = f.inv(b.lead());
    for (int k = a.degree(); k >= db; --k) {
        const Elem c = f.mul(rem[k], inv_lead);
        if (c == 0) continue;
        quo[k - db] = c;
        for (int i = 0; i <= db; ++i) rem[k - db + i] = f.sub(rem[k - db + i], f.mul(c, bc[i]));
    }
    rem.resize(db);
    return {TPoly(a.field(), std::move(quo)), TPoly(a.field(), std::move(rem))};
}

TPoly gcd(const TPoly& a, const TPoly& b) {
    if (a.is_zero() && b.is_zero()) throw Error(ErrorKind::BothZero, "gcd(0, 0)");
    TPoly x = a, y = b;
    while (!y.is_zero()) {
        TPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Bezout xgcd(const TPoly& a, const TPoly& b) {
    if (a.is_zero() && b.is_zero()) throw Error(ErrorKind::BothZero, "xgcd(0, 0)");
    const auto& F = a.field();
    TPoly r0 = a, r1 = b;
    TPoly s0 = TPoly::constant(F, 1), s1(F);
    TPoly t0(F), t1 = TPoly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        TPoly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        TPoly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const Elem inv = F->inv(r0.lead());
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

TPoly powmod(const TPoly& a, std::uint64_t e, const TPoly& m) {
    TPoly result = divmod(TPoly::constant(a.field(), 1), m).second;
    TPoly base = divmod(a, m).second;
    while (e) {
        if (e & 1U) result = divmod(result * base, m).second;
        e >>= 1U;
        if (e) base = divmod(base * base, m).second;
    }
    return result;
}

namespace {

// c(T) = sum c_{pk} T^{pk} with c' = 0  ->  sum root(c_{pk}) T^k.
TPoly pth_root_poly(const TPoly& c) {
    const Field& f = *c.field();
    std::vector<Elem> v;
    for (int i = 0; i <= c.degree(); i += f.p()) v.push_back(f.pth_root(c.coeff(i)));
    return TPoly(c.field(), std::move(v));
}

void squarefree(const TPoly& a, int mult, std::vector<std::pair<TPoly, int>>& out) {
    if (a.degree() <= 0) return;
    const int p = a.field()->p();
    const TPoly d = a.derivative();
    if (d.is_zero()) {
        squarefree(pth_root_poly(a), mult * p, out);
        return;
    }
    TPoly c = gcd(a, d);
    TPoly w = divmod(a, c).first;
    int i = 1;
    while (w.degree() > 0) {
        TPoly y = gcd(w, c);
        TPoly fac = divmod(w, y).first;
        if (fac.degree() > 0) out.emplace_back(fac.monic(), mult * i);
        w = y;
        c = divmod(c, y).first;
        ++i;
    }
    if (c.degree() > 0) squarefree(pth_root_poly(c), mult * p, out);
}

void equal_degree(const TPoly& g, int d, SplitMix64& rng, std::vector<TPoly>& out) {
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    const auto& F = g.field();
    const int q = F->q();
    for (;;) {
        TPoly a = TPoly::random(F, g.degree() - 1, rng);
        if (a.degree() <= 0) continue;
        TPoly b(F);
        if (q % 2 == 1) {
            // a^{(q^d - 1)/2} = (prod_k a^{q^k})^{(q-1)/2}
            TPoly norm = TPoly::constant(F, 1);
            TPoly t = a;
            for (int k = 0; k < d; ++k) {
                norm = divmod(norm * t, g).second;
                t = powmod(t, static_cast<std::uint64_t>(q), g);
            }
            b = powmod(norm, static_cast<std::uint64_t>((q - 1) / 2), g) - TPoly::constant(F, 1);
        } else {
            // absolute trace to F_2
            const int steps = F->f() * d;
            TPoly t = divmod(a, g).second;
            b = t;
            for (int k = 1; k < steps; ++k) {
                t = divmod(t * t, g).second;
                b += t;
            }
        }
        if (b.is_zero()) continue;
        TPoly h = gcd(b, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree(h, d, rng, out);
            equal_degree(divmod(g, h).first, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<TPoly, int>> factor(const TPoly& a) {
    if (a.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "factor of zero polynomial");
    const auto& F = a.field();
    std::vector<std::pair<TPoly, int>> sqf;
    squarefree(a.monic(), 1, sqf);
    std::vector<std::pair<TPoly, int>> result;
    SplitMix64 rng(0x5eed5eedULL);
    for (auto& [s, mult] : sqf) {
        TPoly f = s;
        TPoly h = TPoly::t(F);
        for (int d = 1; 2 * d <= f.degree(); ++d) {
            h = powmod(h, static_cast<std::uint64_t>(F->q()), f);
            TPoly g = gcd(h - TPoly::t(F), f);
            if (g.degree() > 0) {
                std::vector<TPoly> parts;
                equal_degree(g, d, rng, parts);
                for (auto& pt : parts) result.emplace_back(pt, mult);
                f = divmod(f, g).first;
                h = divmod(h, f).second;
            }
        }
        if (f.degree() > 0) result.emplace_back(f.monic(), mult);
    }
    std::sort(result.begin(), result.end(), [](const auto& x, const auto& y) {
        if (x.first == y.first) return x.second < y.second;
        return x.first < y.first;
    });
    // merge equal factors coming from different squarefree layers
    std::vector<std::pair<TPoly, int>> merged;
    for (auto& fm : result) {
        if (!merged.empty() && merged.back().first == fm.first)
            merged.back().second += fm.second;
        else
            merged.push_back(fm);
    }
    return merged;
}

RatFn::RatFn(TPoly num, TPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = TPoly::constant(num_.field(), 1);
        return;
    }
    TPoly g = gcd(num_, den_);
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
    const Elem inv = num_.field()->inv(den_.lead());
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
}

RatFn::RatFn(const TPoly& num) : RatFn(num, TPoly::constant(num.field(), 1)) {}

RatFn operator+(const RatFn& a, const RatFn& b) { return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_}; }
RatFn operator-(const RatFn& a, const RatFn& b) { return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_}; }
RatFn operator*(const RatFn& a, const RatFn& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
}

AbsValue RatFn::abs() const {
    if (is_zero()) return AbsValue::zero_value();
    return AbsValue::power(num_.degree() - den_.degree());
}

std::string RatFn::to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace ffa
