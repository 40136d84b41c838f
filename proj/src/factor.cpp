#include <algorithm>

#include "ffapprox/xpoly.hpp"

namespace ffa {

namespace {

// X -> Y^B, T -> Y.
TPoly kronecker(const XPoly& P, int B) {
    std::vector<Elem> v(static_cast<std::size_t>(P.degree()) * B + B, 0);
    for (int i = 0; i <= P.degree(); ++i) {
        const auto& a = P.coeffs()[i];
        for (int e = 0; e <= a.degree(); ++e) v[static_cast<std::size_t>(i) * B + e] = a.coeff(e);
    }
    return TPoly(P.field(), std::move(v));
}

XPoly unkronecker(const TPoly& k, int B) {
    const auto& F = k.field();
    std::vector<std::vector<Elem>> cols;
    for (int m = 0; m <= k.degree(); ++m) {
        const auto i = static_cast<std::size_t>(m / B);
        if (cols.size() <= i) cols.resize(i + 1, std::vector<Elem>(static_cast<std::size_t>(B), 0));
        cols[i][static_cast<std::size_t>(m % B)] = k.coeff(m);
    }
    std::vector<TPoly> c;
    for (auto& col : cols) c.emplace_back(F, std::move(col));
    return XPoly(F, std::move(c));
}

}  // namespace

XFactorization xp_factor(const XPoly& P, std::uint64_t budget) {
    if (P.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "factorization of the zero polynomial");
    const auto& F = P.field();
    XFactorization out{P.content(), {}};
    if (P.is_constant()) {
        out.content = P.lead();
        return out;
    }
    XPoly rest = P.primitive_part();
    out.content = out.content.scaled(P.lead().lead());

    const int B = rest.height_exponent() + 1;
    std::vector<TPoly> pieces;
    for (const auto& [u, e] : factor(kronecker(rest, B)))
        for (int r = 0; r < e; ++r) pieces.push_back(u);

    std::vector<XPoly> found;
    std::uint64_t tests = 0;
    std::size_t size = 1;
    while (rest.degree() > 0 && 2 * size <= pieces.size()) {
        bool hit = false;
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            if (++tests > budget) throw Error(ErrorKind::BudgetExceeded, "factor recombination budget exhausted");
            TPoly prod = TPoly::constant(F, 1);
            for (std::size_t i : idx) prod = prod * pieces[i];
            XPoly cand = unkronecker(prod, B);
            if (cand.degree() > 0) {
                cand = cand.primitive_part();
                if (cand.degree() < rest.degree() && divides(cand, rest)) {
                    XPoly quotient = divexact(rest, cand);
                    found.push_back(cand);
                    rest = quotient.primitive_part();
                    for (auto it = idx.rbegin(); it != idx.rend(); ++it)
                        pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(*it));
                    hit = true;
                    break;
                }
            }
            // next combination
            std::size_t k = size;
            while (k > 0 && idx[k - 1] == pieces.size() - size + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t i = k; i < size; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!hit) ++size;
    }
    if (rest.degree() > 0) found.push_back(rest.primitive_part());
    std::sort(found.begin(), found.end());
    for (auto& f : found) {
        if (!out.factors.empty() && out.factors.back().first == f)
            ++out.factors.back().second;
        else
            out.factors.emplace_back(f, 1);
    }
    return out;
}

bool xp_is_irreducible(const XPoly& P) {
    if (P.is_constant()) return false;
    const auto fz = xp_factor(P);
    return fz.factors.size() == 1 && fz.factors[0].second == 1;
}

}  // namespace ffa
