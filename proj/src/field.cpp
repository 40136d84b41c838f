#include "ffapprox/field.hpp"

#include <algorithm>
#include <sstream>

namespace ffa {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::SpecMismatch: return "SpecMismatch";
        case ErrorKind::BothZero: return "BothZero";
        case ErrorKind::BelowPrecision: return "BelowPrecision";
        case ErrorKind::NotAPthPower: return "NotAPthPower";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::ConstantPolynomial: return "ConstantPolynomial";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::ConstantCollapse: return "ConstantCollapse";
        case ErrorKind::NewtonConditionFailed: return "NewtonConditionFailed";
        case ErrorKind::NoBaseRoot: return "NoBaseRoot";
        case ErrorKind::NoSuchBranch: return "NoSuchBranch";
        case ErrorKind::Reducible: return "Reducible";
        case ErrorKind::TooFewQuotients: return "TooFewQuotients";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SemanticError: return "SemanticError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Dense polynomials over F_p, low to high, used only while building tables.
using Coeffs = std::vector<int>;

Coeffs mulmod_p(const Coeffs& a, const Coeffs& b, const Coeffs& modulus, int p) {
    const int f = static_cast<int>(modulus.size()) - 1;
    std::vector<int> prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (int d = static_cast<int>(prod.size()) - 1; d >= f; --d) {
        const int c = prod[d];
        if (c == 0) continue;
        for (int k = 0; k <= f; ++k) prod[d - f + k] = ((prod[d - f + k] - c * modulus[k]) % p + p) % p;
    }
    prod.resize(f);
    return prod;
}

bool has_factor_of_degree(const Coeffs& m, int p, int d) {
    // Trial division by every monic polynomial of degree d over F_p.
    const int f = static_cast<int>(m.size()) - 1;
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
        Coeffs div(d + 1, 0);
        long long c = code;
        for (int i = 0; i < d; ++i) {
            div[i] = static_cast<int>(c % p);
            c /= p;
        }
        div[d] = 1;
        Coeffs rem = m;
        for (int k = f; k >= d; --k) {
            const int lead = rem[k];
            if (lead == 0) continue;
            for (int i = 0; i <= d; ++i) rem[k - d + i] = ((rem[k - d + i] - lead * div[i]) % p + p) % p;
        }
        if (std::all_of(rem.begin(), rem.begin() + d, [](int v) { return v == 0; })) return true;
    }
    return false;
}

bool irreducible_over_fp(const Coeffs& m, int p) {
    const int f = static_cast<int>(m.size()) - 1;
    for (int d = 1; 2 * d <= f; ++d)
        if (has_factor_of_degree(m, p, d)) return false;
    return true;
}

}  // namespace

std::shared_ptr<const Field> Field::make(int p, int f, std::vector<int> modulus) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "characteristic " + std::to_string(p) + " is not prime");
    if (f < 1) throw Error(ErrorKind::InvalidArgument, "extension degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < f; ++i) q *= p;
    if (q > 256) throw Error(ErrorKind::InvalidArgument, "field size " + std::to_string(q) + " exceeds 256");

    if (f > 1) {
        if (modulus.empty()) {
            // First monic irreducible in lexicographic order of the low coefficients.
            for (long long code = 0; code < q; ++code) {
                Coeffs m(f + 1, 0);
                long long c = code;
                for (int i = 0; i < f; ++i) {
                    m[i] = static_cast<int>(c % p);
                    c /= p;
                }
                m[f] = 1;
                if (m[0] != 0 && irreducible_over_fp(m, p)) {
                    modulus = m;
                    break;
                }
            }
        }
        for (int& c : modulus) c = ((c % p) + p) % p;
        if (static_cast<int>(modulus.size()) != f + 1 || modulus[f] != 1)
            throw Error(ErrorKind::InvalidArgument, "modulus must be monic of degree f");
        if (!irreducible_over_fp(modulus, p))
            throw Error(ErrorKind::InvalidArgument, "modulus is reducible over F_p");
    } else {
        modulus.clear();
    }

    auto field = std::shared_ptr<Field>(new Field());
    field->p_ = p;
    field->f_ = f;
    field->q_ = static_cast<int>(q);
    field->modulus_ = modulus;

    const int qi = field->q_;
    std::vector<Coeffs> vec(qi);
    for (int a = 0; a < qi; ++a) {
        Coeffs c(f, 0);
        int x = a;
        for (int i = 0; i < f; ++i) {
            c[i] = x % p;
            x /= p;
        }
        vec[a] = c;
    }
    auto encode = [&](const Coeffs& c) {
        int code = 0;
        for (int i = f - 1; i >= 0; --i) code = code * p + c[i];
        return static_cast<Elem>(code);
    };

    field->add_.resize(static_cast<std::size_t>(qi) * qi);
    field->mul_.resize(static_cast<std::size_t>(qi) * qi);
    field->neg_.resize(qi);
    for (int a = 0; a < qi; ++a) {
        Coeffs n(f);
        for (int i = 0; i < f; ++i) n[i] = (p - vec[a][i]) % p;
        field->neg_[a] = encode(n);
        for (int b = 0; b < qi; ++b) {
            Coeffs s(f);
            for (int i = 0; i < f; ++i) s[i] = (vec[a][i] + vec[b][i]) % p;
            field->add_[static_cast<std::size_t>(a) * qi + b] = encode(s);
            Coeffs m = f == 1 ? Coeffs{vec[a][0] * vec[b][0] % p} : mulmod_p(vec[a], vec[b], modulus, p);
            field->mul_[static_cast<std::size_t>(a) * qi + b] = encode(m);
        }
    }
    field->inv_.assign(qi, 0);
    for (int a = 1; a < qi; ++a)
        for (int b = 1; b < qi; ++b)
            if (field->mul_[static_cast<std::size_t>(a) * qi + b] == 1) field->inv_[a] = static_cast<Elem>(b);
    field->frob_.resize(qi);
    field->root_.resize(qi);
    std::uint64_t root_exp = 1;
    for (int i = 0; i < f - 1; ++i) root_exp *= p;
    for (int a = 0; a < qi; ++a) {
        field->frob_[a] = field->pow(static_cast<Elem>(a), p);
        field->root_[a] = field->pow(static_cast<Elem>(a), root_exp);
    }
    return field;
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero in F_" + std::to_string(q_));
    return inv_[a];
}

Elem Field::pow(Elem a, std::uint64_t k) const {
    Elem result = 1;
    Elem base = a;
    while (k) {
        if (k & 1U) result = mul(result, base);
        base = mul(base, base);
        k >>= 1U;
    }
    return result;
}

Elem Field::from_int(std::int64_t n) const {
    const std::int64_t r = ((n % p_) + p_) % p_;
    return static_cast<Elem>(r);
}

std::vector<int> Field::coords(Elem a) const {
    std::vector<int> c(f_);
    int x = a;
    for (int i = 0; i < f_; ++i) {
        c[i] = x % p_;
        x /= p_;
    }
    return c;
}

Elem Field::from_coords(std::span<const int> c) const {
    int code = 0;
    for (int i = f_ - 1; i >= 0; --i) {
        const int v = i < static_cast<int>(c.size()) ? ((c[i] % p_) + p_) % p_ : 0;
        code = code * p_ + v;
    }
    return static_cast<Elem>(code);
}

Elem Field::generator() const { return f_ == 1 ? Elem{1} : static_cast<Elem>(p_); }

std::string Field::format(Elem a) const {
    if (f_ == 1) return std::to_string(a);
    const auto c = coords(a);
    std::ostringstream os;
    bool first = true;
    for (int i = f_ - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << c[i];
            continue;
        }
        if (c[i] != 1) os << c[i] << '*';
        os << 'g';
        if (i > 1) os << '^' << i;
    }
    if (first) os << '0';
    return os.str();
}

std::string Field::spec_string() const {
    std::ostringstream os;
    os << "p=" << p_;
    if (f_ > 1) {
        os << ",f=" << f_ << ",modulus=";
        bool first = true;
        for (int i = f_; i >= 0; --i) {
            const int c = modulus_[i];
            if (c == 0) continue;
            if (!first) os << '+';
            first = false;
            if (i == 0) {
                os << c;
                continue;
            }
            if (c != 1) os << c << '*';
            os << 'g';
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

FqElement::FqElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
    if (value_ >= field_->q()) throw Error(ErrorKind::InvalidArgument, "element code out of range");
}

namespace {
const FieldPtr& common(const FqElement& a, const FqElement& b) {
    if (a.field() != b.field() && !a.field()->same_as(*b.field()))
        throw Error(ErrorKind::SpecMismatch, "elements of " + a.field()->spec_string() + " and " +
                                                 b.field()->spec_string());
    return a.field();
}
}  // namespace

FqElement operator+(const FqElement& a, const FqElement& b) {
    const auto& f = common(a, b);
    return {f, f->add(a.value_, b.value_)};
}
FqElement operator-(const FqElement& a, const FqElement& b) {
    const auto& f = common(a, b);
    return {f, f->sub(a.value_, b.value_)};
}
FqElement operator*(const FqElement& a, const FqElement& b) {
    const auto& f = common(a, b);
    return {f, f->mul(a.value_, b.value_)};
}
FqElement FqElement::inverse() const { return {field_, field_->inv(value_)}; }

}  // namespace ffa
