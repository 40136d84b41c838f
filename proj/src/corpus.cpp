#include "ffapprox/corpus.hpp"

#include "ffapprox/parse.hpp"
#include "ffapprox/sources.hpp"

namespace ffa {

namespace {

std::string literal_text(const LaurentSeries& x) {
    const Field& F = *x.field();
    std::string out;
    const auto& c = x.stored();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        const std::int64_t e = -(x.start() + static_cast<std::int64_t>(k));
        std::string coef = F.format(c[k]);
        if (coef.find('+') != std::string::npos) coef = "(" + coef + ")";
        std::string term;
        if (e == 0)
            term = coef;
        else
            term = (c[k] == 1 ? "" : coef + "*") + (e == 1 ? std::string("T") : "T^" + std::to_string(e));
        out += (out.empty() ? "" : "+") + term;
    }
    return out.empty() ? "0" : out;
}

std::uint64_t parse_seed(std::string_view s, std::size_t offset) {
    if (s.empty()) throw ParseError(offset, "seed digits");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw ParseError(offset + i, "digit");
        const std::uint64_t d = static_cast<std::uint64_t>(s[i] - '0');
        if (v > (UINT64_MAX - d) / 10) throw ParseError(offset + i, "seed below 2^64");
        v = v * 10 + d;
    }
    return v;
}

}  // namespace

std::string SeriesSpec::format() const {
    switch (kind) {
        case SeriesKind::Rational:
            return "rational:(" + ratfn->num().to_string() + ")/(" + ratfn->den().to_string() + ")";
        case SeriesKind::Algebraic:
            return "algebraic:poly=" + poly->to_string() + ";branch=" + branch.to_string(*field);
        case SeriesKind::Mahler:
            return "mahler";
        case SeriesKind::Factorial:
            return "factorial";
        case SeriesKind::Literal:
            return "literal:" + literal_text(*literal);
        case SeriesKind::Random:
            return "random:seed=" + std::to_string(seed);
    }
    return {};
}

LaurentSeries SeriesSpec::build(std::int64_t prec) const {
    switch (kind) {
        case SeriesKind::Rational:
            return rational_series(*ratfn, prec);
        case SeriesKind::Algebraic:
            return algebraic_series(*poly, branch, prec);
        case SeriesKind::Mahler:
            return mahler_series(field, prec);
        case SeriesKind::Factorial:
            return factorial_series(field, prec);
        case SeriesKind::Literal:
            return literal_series(*literal);
        case SeriesKind::Random:
            return random_series(field, seed, prec);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown series kind");
}

bool operator==(const SeriesSpec& a, const SeriesSpec& b) {
    if (a.kind != b.kind || !a.field->same_as(*b.field)) return false;
    switch (a.kind) {
        case SeriesKind::Rational:
            return *a.ratfn == *b.ratfn;
        case SeriesKind::Algebraic:
            return *a.poly == *b.poly && a.branch.valuation == b.branch.valuation && a.branch.lead == b.branch.lead;
        case SeriesKind::Literal:
            return *a.literal == *b.literal;
        case SeriesKind::Random:
            return a.seed == b.seed;
        default:
            return true;
    }
}

SeriesSpec parse_series_spec(const FieldPtr& F, std::string_view text) {
    SeriesSpec s;
    s.field = F;
    const std::size_t colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    const std::size_t off = colon == std::string_view::npos ? text.size() : colon + 1;
    // errors inside a sub-parser are reported at their position in the whole spec
    auto shifted = [&](auto&& fn) {
        try {
            return fn();
        } catch (const ParseError& e) {
            throw ParseError(off + e.position(), e.expected());
        }
    };
    auto no_body = [&] {
        if (colon != std::string_view::npos) throw ParseError(colon, "end of input");
    };
    if (head == "mahler") {
        no_body();
        s.kind = SeriesKind::Mahler;
    } else if (head == "factorial") {
        no_body();
        s.kind = SeriesKind::Factorial;
    } else if (colon == std::string_view::npos) {
        throw ParseError(0, "rational:, algebraic:, mahler, factorial, literal: or random:");
    } else if (head == "rational") {
        s.kind = SeriesKind::Rational;
        s.ratfn = shifted([&] { return parse_ratfn(F, body); });
    } else if (head == "literal" || head == "laurent") {
        s.kind = SeriesKind::Literal;
        s.literal = shifted([&] { return parse_laurent(F, body); });
    } else if (head == "random") {
        if (body.substr(0, 5) != "seed=") throw ParseError(off, "seed=");
        s.kind = SeriesKind::Random;
        s.seed = parse_seed(body.substr(5), off + 5);
    } else if (head == "algebraic") {
        s.kind = SeriesKind::Algebraic;
        if (body.substr(0, 5) != "poly=") throw ParseError(off, "poly=");
        const std::size_t semi = body.find(';');
        if (semi == std::string_view::npos) throw ParseError(text.size(), "';branch='");
        const std::string_view ptext = body.substr(5, semi - 5);
        const std::string_view rest = body.substr(semi + 1);
        if (rest.substr(0, 7) != "branch=") throw ParseError(off + semi + 1, "branch=");
        s.poly = shifted([&] { return parse_xpoly(F, ptext); });
        try {
            s.branch = parse_branch(F, rest.substr(7));
        } catch (const ParseError& e) {
            throw ParseError(off + semi + 8 + e.position(), e.expected());
        }
        if (s.poly->degree() < 1 || !xp_is_irreducible(*s.poly))
            throw Error(ErrorKind::SemanticError, "minimal polynomial " + s.poly->to_string() + " is not irreducible");
    } else {
        throw ParseError(0, "rational:, algebraic:, mahler, factorial, literal: or random:");
    }
    return s;
}

std::vector<std::string> corpus_specs() {
    std::vector<std::string> out{"rational:(T)/(T^2+1)", "mahler", "factorial"};
    for (int s = 1; s <= 10; ++s) out.push_back("random:seed=" + std::to_string(s));
    return out;
}

std::vector<SeriesSpec> corpus(const FieldPtr& F) {
    std::vector<SeriesSpec> out;
    for (const auto& t : corpus_specs()) out.push_back(parse_series_spec(F, t));
    return out;
}

}  // namespace ffa
