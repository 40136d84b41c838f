#include "ffapprox/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace ffa {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    constexpr auto kMax = LaurentSeries::kExact;
    if (a == kMax || b == kMax) return kMax;
    if (b > 0 && a > kMax - b) return kMax;
    return a + b;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t d = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
    return d;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

namespace {

std::int64_t sat_mul(std::int64_t a, std::int64_t k) {
    if (a == LaurentSeries::kExact) return a;
    if (a > LaurentSeries::kExact / k) return LaurentSeries::kExact;
    return a * k;
}

std::string coeff_string(const Field& f, Elem c) {
    std::string s = f.format(c);
    if (s.find('g') != std::string::npos && s != "g") s = "(" + s + ")";
    return s;
}

}  // namespace

LaurentSeries::LaurentSeries(FieldPtr field, std::int64_t start, std::vector<Elem> coeffs, std::int64_t prec,
                             std::shared_ptr<const SeriesSource> source)
    : field_(std::move(field)), start_(start), prec_(prec), c_(std::move(coeffs)), source_(std::move(source)) {
    normalize();
}

void LaurentSeries::normalize() {
    if (prec_ != kExact && !c_.empty()) {
        const std::int64_t keep = prec_ - start_;
        if (keep <= 0)
            c_.clear();
        else if (static_cast<std::int64_t>(c_.size()) > keep)
            c_.resize(static_cast<std::size_t>(keep));
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
        start_ += static_cast<std::int64_t>(lead);
    }
    if (c_.empty()) start_ = 0;
}

LaurentSeries LaurentSeries::monomial(FieldPtr field, Elem c, std::int64_t index) {
    return LaurentSeries(std::move(field), index, std::vector<Elem>{c}, kExact);
}

LaurentSeries LaurentSeries::from_tpoly(const TPoly& a) {
    if (a.is_zero()) return zero(a.field());
    std::vector<Elem> v(a.coeffs().rbegin(), a.coeffs().rend());
    return LaurentSeries(a.field(), -a.degree(), std::move(v), kExact);
}

LaurentSeries LaurentSeries::from_rational(const RatFn& r, std::int64_t prec) {
    if (r.is_polynomial()) return from_tpoly(r.num());
    const Field& f = *r.field();
    const int N = r.num().degree();
    const int D = r.den().degree();
    // x = T^{N-D} nn(u) / d(u) with u = T^-1 and d(0) = 1 (den monic).
    const std::int64_t first = D - N;
    const std::int64_t count = prec - first;
    std::vector<Elem> s(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)), 0);
    for (std::int64_t k = 0; k < count; ++k) {
        Elem acc = k <= N ? r.num().coeff(N - static_cast<int>(k)) : Elem{0};
        for (std::int64_t i = 1; i <= std::min<std::int64_t>(k, D); ++i) {
            const Elem d = r.den().coeff(D - static_cast<int>(i));
            if (d != 0) acc = f.sub(acc, f.mul(d, s[k - i]));
        }
        s[k] = acc;
    }
    return LaurentSeries(r.field(), first, std::move(s), prec);
}

std::optional<std::int64_t> LaurentSeries::valuation() const {
    if (!c_.empty()) return start_;
    if (is_exact()) return std::nullopt;
    throw PrecisionError("valuation not certified", prec_);
}

AbsValue LaurentSeries::abs() const {
    auto v = valuation();
    return v ? AbsValue::power(-*v) : AbsValue::zero_value();
}

Elem LaurentSeries::coeff(std::int64_t n) const {
    if (n >= prec_) throw PrecisionError("coefficient beyond known window", prec_);
    if (c_.empty() || n < start_ || n - start_ >= static_cast<std::int64_t>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(n - start_)];
}

std::vector<Elem> LaurentSeries::window(std::int64_t from, std::int64_t to) const {
    if (to > prec_) throw PrecisionError("window beyond known coefficients", prec_);
    std::vector<Elem> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(to - from, 0)));
    for (std::int64_t n = from; n < to; ++n) out.push_back(coeff(n));
    return out;
}

LaurentSeries LaurentSeries::without_source() const {
    LaurentSeries r = *this;
    r.source_.reset();
    return r;
}

LaurentSeries LaurentSeries::truncated(std::int64_t p) const {
    if (p >= prec_) return *this;
    LaurentSeries r = *this;
    r.prec_ = p;
    r.normalize();
    return r;
}

LaurentSeries LaurentSeries::extended(std::int64_t target, const PrecisionBudget& budget) const {
    if (target <= prec_) return *this;
    if (!source_) throw PrecisionError("series has no generator", prec_);
    std::int64_t t = target;
    if (t > budget.max_terms) {
        if (budget.on_exhaust == PrecisionBudget::OnExhaust::Error)
            throw Error(ErrorKind::BudgetExceeded, "precision budget of " + std::to_string(budget.max_terms) +
                                                       " terms exhausted (requested " + std::to_string(target) + ")");
        t = budget.max_terms;
    }
    if (t <= prec_) return *this;
    return source_->generate(t);
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries r = *this;
    for (auto& e : r.c_) e = field_->neg(e);
    r.source_.reset();
    return r;
}

namespace {

LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
    if (!a.field()->same_as(*b.field())) throw Error(ErrorKind::SpecMismatch, "series over different fields");
    const Field& f = *a.field();
    const std::int64_t prec = std::min(a.prec(), b.prec());
    if (!a.known_nonzero() && !b.known_nonzero()) return LaurentSeries(a.field(), 0, {}, prec);
    std::int64_t lo = LaurentSeries::kExact, hi = std::numeric_limits<std::int64_t>::min();
    for (const auto* s : {&a, &b}) {
        if (!s->known_nonzero()) continue;
        lo = std::min(lo, s->start());
        hi = std::max(hi, s->start() + static_cast<std::int64_t>(s->stored().size()));
    }
    hi = std::min(hi, prec);
    if (lo >= hi) return LaurentSeries(a.field(), 0, {}, prec);
    std::vector<Elem> v(static_cast<std::size_t>(hi - lo), 0);
    auto accumulate = [&](const LaurentSeries& s, bool neg) {
        const auto& c = s.stored();
        for (std::size_t i = 0; i < c.size(); ++i) {
            const std::int64_t n = s.start() + static_cast<std::int64_t>(i);
            if (n >= hi) break;
            auto& slot = v[static_cast<std::size_t>(n - lo)];
            slot = neg ? f.sub(slot, c[i]) : f.add(slot, c[i]);
        }
    };
    accumulate(a, false);
    accumulate(b, subtract);
    return LaurentSeries(a.field(), lo, std::move(v), prec);
}

}  // namespace

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, false); }
LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, true); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    if (!a.field()->same_as(*b.field())) throw Error(ErrorKind::SpecMismatch, "series over different fields");
    if (a.is_certified_zero() || b.is_certified_zero()) return LaurentSeries::zero(a.field());
    const std::int64_t prec = std::min(sat_add(a.prec(), b.start()), sat_add(b.prec(), a.start()));
    if (!a.known_nonzero() || !b.known_nonzero()) return LaurentSeries(a.field(), 0, {}, prec);
    const Field& f = *a.field();
    const auto& ca = a.stored();
    const auto& cb = b.stored();
    const std::int64_t lo = a.start() + b.start();
    std::int64_t len = static_cast<std::int64_t>(ca.size() + cb.size()) - 1;
    if (prec != LaurentSeries::kExact) len = std::min(len, prec - lo);
    if (len <= 0) return LaurentSeries(a.field(), 0, {}, prec);
    std::vector<Elem> v(static_cast<std::size_t>(len), 0);
    for (std::size_t i = 0; i < ca.size() && static_cast<std::int64_t>(i) < len; ++i) {
        if (ca[i] == 0) continue;
        const std::size_t jmax = std::min<std::size_t>(cb.size(), static_cast<std::size_t>(len) - i);
        for (std::size_t j = 0; j < jmax; ++j)
            if (cb[j]) v[i + j] = f.add(v[i + j], f.mul(ca[i], cb[j]));
    }
    return LaurentSeries(a.field(), lo, std::move(v), prec);
}

LaurentSeries LaurentSeries::scaled(Elem c) const {
    if (c == 0) return LaurentSeries(field_, 0, {}, prec_);
    LaurentSeries r = *this;
    for (auto& e : r.c_) e = field_->mul(e, c);
    r.source_.reset();
    return r;
}

LaurentSeries LaurentSeries::times(const TPoly& a) const { return *this * from_tpoly(a); }

LaurentSeries LaurentSeries::shifted(std::int64_t k) const {
    LaurentSeries r = *this;
    if (!r.c_.empty()) r.start_ -= k;
    if (r.prec_ != kExact) r.prec_ -= k;
    r.source_.reset();
    return r;
}

LaurentSeries LaurentSeries::pow(unsigned k) const {
    LaurentSeries result = monomial(field_, 1, 0);
    LaurentSeries base = *this;
    while (k) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k) base = base * base;
    }
    return result;
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.prec_ == b.prec_ && a.start() == b.start() && a.c_ == b.c_;
}

std::string LaurentSeries::to_string(std::size_t max_terms) const {
    std::ostringstream os;
    std::size_t written = 0;
    bool cut = false;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (written == max_terms) {
            cut = true;
            break;
        }
        const std::int64_t n = start_ + static_cast<std::int64_t>(i);
        if (written) os << '+';
        ++written;
        const std::string cs = coeff_string(*field_, c_[i]);
        if (n == 0) {
            os << cs;
            continue;
        }
        if (c_[i] != 1) os << cs << '*';
        os << 'T';
        if (n != -1) os << '^' << -n;
    }
    if (cut) os << "+...";
    if (!is_exact()) {
        if (written || cut) os << '+';
        os << "O(T^" << -prec_ << ')';
    } else if (!written) {
        os << '0';
    }
    return os.str();
}

LaurentSeries inverse(const LaurentSeries& x, std::int64_t cap) {
    if (x.is_certified_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero series");
    if (!x.known_nonzero()) throw PrecisionError("inverse of series with unknown valuation", x.prec());
    const Field& f = *x.field();
    const std::int64_t nu = x.start();
    const auto& u = x.stored();
    if (x.is_exact() && u.size() == 1) return LaurentSeries::monomial(x.field(), f.inv(u[0]), -nu);
    const std::int64_t prec = x.is_exact() ? cap : x.prec() - 2 * nu;
    const std::int64_t count = prec + nu;
    if (count <= 0) return LaurentSeries(x.field(), 0, {}, prec);
    std::vector<Elem> y(static_cast<std::size_t>(count), 0);
    const Elem y0 = f.inv(u[0]);
    y[0] = y0;
    for (std::int64_t k = 1; k < count; ++k) {
        Elem acc = 0;
        const std::int64_t imax = std::min<std::int64_t>(k, static_cast<std::int64_t>(u.size()) - 1);
        for (std::int64_t i = 1; i <= imax; ++i)
            if (u[i] && y[k - i]) acc = f.add(acc, f.mul(u[i], y[k - i]));
        y[k] = f.neg(f.mul(y0, acc));
    }
    return LaurentSeries(x.field(), -nu, std::move(y), prec);
}

AbsValue frac_part_abs(const LaurentSeries& x) {
    const auto& c = x.stored();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::int64_t n = x.start() + static_cast<std::int64_t>(i);
        if (n >= 1 && c[i] != 0) return AbsValue::power(-n);
    }
    if (x.is_exact()) return AbsValue::zero_value();
    throw PrecisionError("fractional part not certified", x.prec());
}

std::pair<TPoly, LaurentSeries> poly_part(const LaurentSeries& x) {
    if (x.prec() < 1) throw PrecisionError("polynomial part not known", x.prec());
    const auto& F = x.field();
    std::vector<Elem> poly;
    std::vector<Elem> frac;
    std::int64_t frac_start = 1;
    const auto& c = x.stored();
    if (x.known_nonzero() && x.start() <= 0) poly.assign(static_cast<std::size_t>(-x.start() + 1), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::int64_t n = x.start() + static_cast<std::int64_t>(i);
        if (n <= 0) {
            poly[static_cast<std::size_t>(-n)] = c[i];
        } else {
            if (frac.empty()) frac_start = n;
            frac.push_back(c[i]);
        }
    }
    return {TPoly(F, std::move(poly)), LaurentSeries(F, frac_start, std::move(frac), x.prec())};
}

LaurentSeries frobenius(const LaurentSeries& x) {
    const Field& f = *x.field();
    const int p = f.p();
    const auto& c = x.stored();
    std::vector<Elem> v(c.empty() ? 0 : (c.size() - 1) * p + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) v[i * p] = f.frobenius(c[i]);
    return LaurentSeries(x.field(), x.known_nonzero() ? x.start() * p : 0, std::move(v), sat_mul(x.prec(), p));
}

LaurentSeries pth_root(const LaurentSeries& x) {
    const Field& f = *x.field();
    const int p = f.p();
    const auto& c = x.stored();
    std::vector<Elem> v;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::int64_t n = x.start() + static_cast<std::int64_t>(i);
        if (c[i] == 0) continue;
        if (n % p != 0)
            throw Error(ErrorKind::NotAPthPower, "nonzero coefficient at index " + std::to_string(n));
    }
    const std::int64_t start = x.known_nonzero() ? x.start() / p : 0;
    for (std::size_t i = 0; i < c.size(); i += p) v.push_back(f.pth_root(c[i]));
    const std::int64_t prec = x.is_exact() ? LaurentSeries::kExact : ceil_div(x.prec(), p);
    return LaurentSeries(x.field(), start, std::move(v), prec);
}

LaurentSeries cartier(const LaurentSeries& x, int i, int j) {
    const Field& f = *x.field();
    std::int64_t P = 1;
    for (int k = 0; k < j; ++k) P *= f.p();
    if (i < 0 || i >= P) throw Error(ErrorKind::InvalidArgument, "Cartier index out of range");
    const std::int64_t prec = x.is_exact() ? LaurentSeries::kExact : floor_div(x.prec() - 1 + i, P) + 1;
    if (!x.known_nonzero()) return LaurentSeries(x.field(), 0, {}, prec);
    const auto& c = x.stored();
    const std::int64_t start = ceil_div(x.start() + i, P);
    std::vector<Elem> v;
    for (std::int64_t k = start;; ++k) {
        const std::int64_t n = P * k - i;
        const std::int64_t idx = n - x.start();
        if (idx >= static_cast<std::int64_t>(c.size())) break;
        Elem e = c[static_cast<std::size_t>(idx)];
        for (int r = 0; r < j; ++r) e = f.pth_root(e);
        v.push_back(e);
    }
    return LaurentSeries(x.field(), start, std::move(v), prec);
}

LaurentSeries SeriesSource::attach(const LaurentSeries& s) const {
    return LaurentSeries(s.field(), s.start(), s.stored(), s.prec(), shared_from_this());
}

}  // namespace ffa
