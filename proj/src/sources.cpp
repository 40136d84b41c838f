#include "ffapprox/sources.hpp"

#include <algorithm>

#include "ffapprox/xpoly.hpp"

namespace ffa {

namespace {

class RationalSource final : public SeriesSource {
public:
    explicit RationalSource(RatFn r) : r_(std::move(r)) {}
    FieldPtr field() const override { return r_.field(); }
    LaurentSeries generate(std::int64_t prec) const override {
        return attach(LaurentSeries::from_rational(r_, prec));
    }
    std::optional<std::vector<TPoly>> minimal_polynomial() const override {
        return std::vector<TPoly>{-r_.num(), r_.den()};
    }
    std::string describe() const override { return "rational:" + r_.to_string(); }

private:
    RatFn r_;
};

class MahlerSource final : public SeriesSource {
public:
    explicit MahlerSource(FieldPtr f) : f_(std::move(f)) {}
    FieldPtr field() const override { return f_; }
    LaurentSeries generate(std::int64_t prec) const override {
        std::vector<Elem> v(static_cast<std::size_t>(std::max<std::int64_t>(prec - 1, 0)), 0);
        for (std::int64_t k = 1; k < prec; k *= f_->p()) v[static_cast<std::size_t>(k - 1)] = 1;
        return attach(LaurentSeries(f_, 1, std::move(v), prec));
    }
    std::optional<std::vector<TPoly>> minimal_polynomial() const override {
        const int p = f_->p();
        std::vector<TPoly> m(static_cast<std::size_t>(p) + 1, TPoly(f_));
        m[0] = TPoly::constant(f_, 1);
        m[1] = -TPoly::t(f_);
        m[p] += TPoly::t(f_);
        return m;
    }
    std::string describe() const override { return "mahler"; }

private:
    FieldPtr f_;
};

class FactorialSource final : public SeriesSource {
public:
    explicit FactorialSource(FieldPtr f) : f_(std::move(f)) {}
    FieldPtr field() const override { return f_; }
    LaurentSeries generate(std::int64_t prec) const override {
        std::vector<Elem> v(static_cast<std::size_t>(std::max<std::int64_t>(prec - 1, 0)), 0);
        std::int64_t fact = 1;
        for (std::int64_t k = 1; fact < prec; ++k) {
            fact *= k;
            if (fact < prec) v[static_cast<std::size_t>(fact - 1)] = 1;
        }
        return attach(LaurentSeries(f_, 1, std::move(v), prec));
    }
    std::string describe() const override { return "factorial"; }

private:
    FieldPtr f_;
};

class RandomSource final : public SeriesSource {
public:
    RandomSource(FieldPtr f, std::uint64_t seed) : f_(std::move(f)), seed_(seed) {}
    FieldPtr field() const override { return f_; }
    LaurentSeries generate(std::int64_t prec) const override {
        SplitMix64 rng(seed_);
        std::vector<Elem> v(static_cast<std::size_t>(std::max<std::int64_t>(prec - 1, 0)));
        for (auto& e : v) e = static_cast<Elem>(rng.below(static_cast<std::uint64_t>(f_->q())));
        return attach(LaurentSeries(f_, 1, std::move(v), prec));
    }
    std::string describe() const override { return "random:seed=" + std::to_string(seed_); }

private:
    FieldPtr f_;
    std::uint64_t seed_;
};

class LiteralSource final : public SeriesSource {
public:
    explicit LiteralSource(LaurentSeries x) : x_(x.without_source()), r_(exact_to_ratfn(x_)) {}
    FieldPtr field() const override { return x_.field(); }
    LaurentSeries generate(std::int64_t) const override { return attach(x_); }
    std::optional<std::vector<TPoly>> minimal_polynomial() const override {
        return std::vector<TPoly>{-r_.num(), r_.den()};
    }
    std::string describe() const override { return "literal:" + x_.to_string(1U << 20U); }

private:
    LaurentSeries x_;
    RatFn r_;
};

class FrobeniusSource final : public SeriesSource {
public:
    explicit FrobeniusSource(LaurentSeries inner) : inner_(std::move(inner)) {}
    FieldPtr field() const override { return inner_.field(); }
    LaurentSeries generate(std::int64_t prec) const override {
        const int p = inner_.field()->p();
        LaurentSeries x = inner_.extended(ceil_div(prec, p), PrecisionBudget{std::max<std::int64_t>(prec, 4096)});
        return attach(frobenius(x));
    }
    std::optional<std::vector<TPoly>> minimal_polynomial() const override {
        auto m = series_minpoly(inner_);
        if (!m) return std::nullopt;
        const XPoly lifted = xp_frobenius_lift(*m);
        const auto fz = xp_factor(lifted);
        if (fz.factors.size() == 1) return fz.factors[0].first.coeffs();
        const LaurentSeries y = frobenius(inner_);
        for (const auto& [g, e] : fz.factors) {
            const LaurentSeries v = xp_eval(g, y.without_source());
            if (!v.known_nonzero()) return g.coeffs();
        }
        return std::nullopt;
    }
    std::string describe() const override {
        return "frobenius(" + (inner_.source() ? inner_.source()->describe() : std::string("?")) + ")";
    }

private:
    LaurentSeries inner_;
};

}  // namespace

RatFn exact_to_ratfn(const LaurentSeries& exact) {
    if (!exact.is_exact()) throw Error(ErrorKind::InvalidArgument, "series is not exact");
    const auto& F = exact.field();
    if (exact.is_certified_zero()) return RatFn(TPoly(F));
    const std::int64_t last = exact.start() + static_cast<std::int64_t>(exact.stored().size()) - 1;
    const std::int64_t shift = std::max<std::int64_t>(last, 0);
    // x * T^shift is a polynomial; index n contributes T^{shift - n}
    std::vector<Elem> v(static_cast<std::size_t>(shift - exact.start() + 1), 0);
    for (std::size_t i = 0; i < exact.stored().size(); ++i) {
        const std::int64_t n = exact.start() + static_cast<std::int64_t>(i);
        v[static_cast<std::size_t>(shift - n)] = exact.stored()[i];
    }
    return RatFn(TPoly(F, std::move(v)), TPoly::monomial(F, 1, static_cast<int>(shift)));
}

LaurentSeries rational_series(const RatFn& r, std::int64_t prec) {
    return std::make_shared<RationalSource>(r)->generate(prec);
}

LaurentSeries mahler_series(const FieldPtr& field, std::int64_t prec) {
    return std::make_shared<MahlerSource>(field)->generate(prec);
}

LaurentSeries factorial_series(const FieldPtr& field, std::int64_t prec) {
    return std::make_shared<FactorialSource>(field)->generate(prec);
}

LaurentSeries random_series(const FieldPtr& field, std::uint64_t seed, std::int64_t prec) {
    return std::make_shared<RandomSource>(field, seed)->generate(prec);
}

LaurentSeries literal_series(const LaurentSeries& exact) {
    if (!exact.is_exact()) throw Error(ErrorKind::InvalidArgument, "literal series must be exact");
    return std::make_shared<LiteralSource>(exact)->generate(0);
}

LaurentSeries frobenius_series(const LaurentSeries& x) {
    if (!x.source()) return frobenius(x);
    auto src = std::make_shared<FrobeniusSource>(x);
    return src->generate(x.is_exact() ? LaurentSeries::kExact : x.prec() * x.field()->p());
}

}  // namespace ffa
