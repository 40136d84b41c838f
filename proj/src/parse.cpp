#include "ffapprox/parse.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace ffa {

namespace {

/// Sparse sum of c * X^i * T^e with e possibly negative.
struct Expr {
    std::map<std::pair<int, int>, Elem> terms;  // (i, e) -> c
};

class Parser {
public:
    Parser(const Field* F, int p, std::string_view s) : F_(F), p_(p), s_(s) {}

    Expr parse_all() {
        Expr e = sum();
        skip();
        if (pos_ != s_.size()) fail("end of input");
        return e;
    }
    Expr sum() {
        skip();
        bool neg = eat('-');
        Expr acc = product();
        if (neg) acc = scale(acc, minus_one());
        for (;;) {
            skip();
            if (eat('+')) {
                acc = add(acc, product());
            } else if (peek() == '-') {
                ++pos_;
                acc = add(acc, scale(product(), minus_one()));
            } else {
                return acc;
            }
        }
    }
    std::size_t pos() const { return pos_; }
    bool at_end() {
        skip();
        return pos_ == s_.size();
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& expected) const { throw ParseError(pos_, expected); }

private:
    Expr product() {
        Expr acc = power();
        while (eat('*')) acc = mul(acc, power());
        return acc;
    }
    Expr power() {
        skip();
        const char c = peek();
        if (c == 'T' || c == 'X') {
            ++pos_;
            int k = 1;
            if (eat('^')) k = integer(true);
            if (c == 'X' && k < 0) fail("nonnegative exponent of X");
            return mono(c == 'X' ? k : 0, c == 'T' ? k : 0, 1);
        }
        Expr base;
        if (c == '(') {
            ++pos_;
            base = sum();
            if (!eat(')')) fail("')'");
        } else if (c == 'g') {
            ++pos_;
            if (!F_ || F_->f() == 1) fail("integer (g needs an extension field)");
            base = mono(0, 0, F_->generator());
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            const int v = integer(false);
            base = mono(0, 0, constant(v));
        } else {
            fail("integer, g, T, X or '('");
        }
        if (eat('^')) {
            const int k = integer(false);
            Expr r = mono(0, 0, constant(1));
            for (int i = 0; i < k; ++i) r = mul(r, base);
            return r;
        }
        return base;
    }
    int integer(bool allow_sign) {
        skip();
        bool neg = false;
        if (allow_sign && peek() == '-') {
            neg = true;
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("integer");
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s_[pos_++] - '0');
            if (v > 1000000) fail("exponent below 10^6");
        }
        return static_cast<int>(neg ? -v : v);
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    // coefficient arithmetic: in F_q when a field is known, else in Z/p on codes
    Elem constant(long long v) const {
        return F_ ? F_->from_int(v) : static_cast<Elem>(((v % p_) + p_) % p_);
    }
    Elem minus_one() const { return constant(-1); }
    Elem cadd(Elem a, Elem b) const { return F_ ? F_->add(a, b) : static_cast<Elem>((a + b) % p_); }
    Elem cmul(Elem a, Elem b) const { return F_ ? F_->mul(a, b) : static_cast<Elem>((a * b) % p_); }

    Expr mono(int i, int e, Elem c) const {
        Expr r;
        if (c != 0) r.terms[{i, e}] = c;
        return r;
    }
    Expr add(Expr a, const Expr& b) const {
        for (const auto& [k, c] : b.terms) {
            const Elem s = cadd(a.terms.count(k) ? a.terms[k] : 0, c);
            if (s == 0)
                a.terms.erase(k);
            else
                a.terms[k] = s;
        }
        return a;
    }
    Expr scale(const Expr& a, Elem c) const {
        Expr r;
        for (const auto& [k, v] : a.terms)
            if (Elem m = cmul(v, c); m != 0) r.terms[k] = m;
        return r;
    }
    Expr mul(const Expr& a, const Expr& b) const {
        Expr r;
        for (const auto& [ka, ca] : a.terms)
            for (const auto& [kb, cb] : b.terms)
                r = add(r, mono(ka.first + kb.first, ka.second + kb.second, cmul(ca, cb)));
        return r;
    }

    const Field* F_;
    int p_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

Expr parse_expr(const FieldPtr& F, std::string_view text) { return Parser(F.get(), F->p(), text).parse_all(); }

TPoly to_tpoly(const FieldPtr& F, const Expr& e) {
    std::vector<Elem> c;
    for (const auto& [k, v] : e.terms) {
        if (k.first != 0) throw Error(ErrorKind::SemanticError, "X in a polynomial of T");
        if (k.second < 0) throw Error(ErrorKind::SemanticError, "negative power of T in a polynomial");
        if (static_cast<int>(c.size()) <= k.second) c.resize(static_cast<std::size_t>(k.second) + 1, 0);
        c[static_cast<std::size_t>(k.second)] = v;
    }
    return TPoly(F, c);
}

}  // namespace

std::vector<int> parse_modulus(std::string_view text, int p) {
    // the generator is written g: read it as X in a scratch expression
    std::string s(text);
    for (auto& ch : s)
        if (ch == 'g') ch = 'X';
    Expr e = Parser(nullptr, p, s).parse_all();
    std::vector<int> out;
    for (const auto& [k, v] : e.terms) {
        if (k.second != 0) throw Error(ErrorKind::SemanticError, "T in a field modulus");
        if (static_cast<int>(out.size()) <= k.first) out.resize(static_cast<std::size_t>(k.first) + 1, 0);
        out[static_cast<std::size_t>(k.first)] = v;
    }
    return out;
}

Elem parse_elem(const FieldPtr& F, std::string_view text) {
    const TPoly t = to_tpoly(F, parse_expr(F, text));
    if (t.degree() > 0) throw Error(ErrorKind::SemanticError, "expected a field element");
    return t.coeff(0);
}

TPoly parse_tpoly(const FieldPtr& F, std::string_view text) { return to_tpoly(F, parse_expr(F, text)); }

RatFn parse_ratfn(const FieldPtr& F, std::string_view text) {
    Parser ps(F.get(), F->p(), text);
    const Expr num = ps.sum();
    if (ps.at_end()) return RatFn(to_tpoly(F, num));
    if (!ps.eat('/')) ps.fail("'/' or end of input");
    const Expr den = ps.sum();
    if (!ps.at_end()) ps.fail("end of input");
    return RatFn(to_tpoly(F, num), to_tpoly(F, den));
}

XPoly parse_xpoly(const FieldPtr& F, std::string_view text) {
    const Expr e = parse_expr(F, text);
    std::map<int, Expr> by_x;
    for (const auto& [k, v] : e.terms) by_x[k.first].terms[{0, k.second}] = v;
    std::vector<TPoly> c;
    for (const auto& [i, part] : by_x) {
        if (static_cast<int>(c.size()) <= i) c.resize(static_cast<std::size_t>(i) + 1, TPoly(F));
        c[static_cast<std::size_t>(i)] = to_tpoly(F, part);
    }
    return XPoly(F, std::move(c));
}

LaurentSeries parse_laurent(const FieldPtr& F, std::string_view text) {
    const Expr e = parse_expr(F, text);
    if (e.terms.empty()) return LaurentSeries::zero(F);
    // index n carries T^{-n}
    std::int64_t lo = 0, hi = 0;
    bool first = true;
    for (const auto& [k, v] : e.terms) {
        if (k.first != 0) throw Error(ErrorKind::SemanticError, "X in a Laurent series");
        const std::int64_t n = -k.second;
        lo = first ? n : std::min(lo, n);
        hi = first ? n : std::max(hi, n);
        first = false;
    }
    std::vector<Elem> c(static_cast<std::size_t>(hi - lo + 1), 0);
    for (const auto& [k, v] : e.terms) c[static_cast<std::size_t>(-k.second - lo)] = v;
    return LaurentSeries(F, lo, std::move(c), LaurentSeries::kExact);
}

BranchSelector parse_branch(const FieldPtr& F, std::string_view text) {
    BranchSelector b;
    bool have_val = false;
    std::size_t at = 0;
    while (at < text.size()) {
        const std::size_t comma = text.find(',', at);
        const std::string_view item = text.substr(at, comma == std::string_view::npos ? text.npos : comma - at);
        const std::size_t colon = item.find(':');
        if (colon == std::string_view::npos) throw ParseError(at, "key:value");
        const std::string_view key = item.substr(0, colon), val = item.substr(colon + 1);
        if (key == "val") {
            Parser ps(nullptr, 2, val);
            const bool neg = ps.eat('-');
            std::int64_t v = 0;
            std::size_t i = neg ? 1 : 0;
            if (i >= val.size()) throw ParseError(at + colon + 1, "integer");
            for (; i < val.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(val[i]))) throw ParseError(at + colon + 1 + i, "digit");
                v = v * 10 + (val[i] - '0');
            }
            b.valuation = neg ? -v : v;
            have_val = true;
        } else if (key == "lead") {
            b.lead = parse_elem(F, val);
        } else {
            throw ParseError(at, "'val' or 'lead'");
        }
        if (comma == std::string_view::npos) break;
        at = comma + 1;
    }
    if (!have_val) throw ParseError(text.size(), "val:<integer>");
    return b;
}

}  // namespace ffa
