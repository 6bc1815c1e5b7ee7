#include "knotdecomp/tangle_calculus.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "knotdecomp/errors.hpp"

namespace knot {

Fraction Fraction::of(long long p, long long q) {
    if (p == 0 && q == 0) throw KnotError(ErrorCode::kDivisionCollapse, "fraction 0/0");
    if (q == 0) return infinity();
    if (p == 0) return {0, 1};
    long long g = std::gcd(p, q);
    p /= g;
    q /= g;
    if (p < 0) {
        p = -p;
        q = -q;
    }
    return {p, q};
}

bool fractions_equal(const Fraction& a, const Fraction& b) {
    return Fraction::of(a.r, a.s) == Fraction::of(b.r, b.s);
}

Fraction eval_cf(const ContinuedFraction& cf) {
    if (cf.empty()) return Fraction::infinity();
    long long num = cf.back(), den = 1;
    for (std::size_t i = cf.size() - 1; i-- > 0;) {
        if (num == 0)
            throw KnotError(ErrorCode::kDivisionCollapse,
                            "partial denominator vanishes at term " + std::to_string(i + 1));
        long long next = cf[i] * num + den;
        den = num;
        num = next;
    }
    return Fraction::of(num, den);
}

ContinuedFraction expand_homogeneous(const Fraction& f) {
    if (f.is_infinite()) return {};
    if (f.r == 0) return {0};
    const bool negative = f.s < 0;
    long long p = f.r, q = negative ? -f.s : f.s;
    ContinuedFraction out;
    while (q != 0) {
        long long a = p / q;
        out.push_back(negative ? -a : a);
        long long rem = p - a * q;
        p = q;
        q = rem;
    }
    return out;
}

bool is_homogeneous(const ContinuedFraction& cf) {
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < cf.size(); ++i) {
        if (i > 0 && cf[i] == 0) return false;
        pos |= cf[i] > 0;
        neg |= cf[i] < 0;
    }
    return !(pos && neg);
}

bool is_strictly_homogeneous(const ContinuedFraction& cf) {
    if (!is_homogeneous(cf) || cf.empty()) return false;
    return std::llabs(cf.front()) != 1 && std::llabs(cf.back()) != 1;
}

std::vector<long long> band_weights(const ContinuedFraction& cf) {
    std::vector<long long> b(cf.size());
    for (std::size_t i = 0; i < cf.size(); ++i) b[i] = (i % 2 == 0) ? cf[i] : -cf[i];
    return b;
}

std::string to_string(const Fraction& f) {
    if (f.is_infinite()) return "inf";
    Fraction n = Fraction::of(f.r, f.s);
    std::ostringstream os;
    if (n.s < 0) os << '-' << n.r << '/' << -n.s;
    else os << n.r << '/' << n.s;
    return os.str();
}

std::string cf_to_string(const ContinuedFraction& cf) {
    if (cf.empty()) return "inf";
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < cf.size(); ++i) os << (i ? "," : "") << cf[i];
    os << ']';
    return os.str();
}

namespace {

std::vector<long long> read_integers(std::string_view text, const char* what) {
    std::vector<long long> out;
    std::size_t i = 0;
    auto sep = [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '[' || c == ']';
    };
    while (i < text.size()) {
        while (i < text.size() && sep(text[i])) ++i;
        if (i >= text.size()) break;
        std::size_t start = i;
        if (text[i] == '-' || text[i] == '+') ++i;
        std::size_t digits = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == digits || (i < text.size() && !sep(text[i])))
            throw KnotError(ErrorCode::kMalformedCode, std::string("malformed ") + what);
        out.push_back(std::stoll(std::string(text.substr(start, i - start))));
    }
    return out;
}

}  // namespace

Fraction parse_fraction(std::string_view text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "inf" || t == "infinity" || t == "oo") return Fraction::infinity();
    auto slash = t.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            long long v = std::stoll(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return Fraction::of(v, 1);
        }
        std::string a = t.substr(0, slash), b = t.substr(slash + 1);
        long long p = std::stoll(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        long long q = std::stoll(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        return Fraction::of(p, q);
    } catch (const std::logic_error&) {
        throw KnotError(ErrorCode::kMalformedCode, "malformed fraction '" + t + "'");
    }
}

ContinuedFraction parse_cf(std::string_view text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "inf" || t == "[inf]") return {};
    auto out = read_integers(t, "continued fraction");
    if (out.empty()) throw KnotError(ErrorCode::kMalformedCode, "empty continued fraction");
    return out;
}

Tangle cardan_to_diagram(const ContinuedFraction& cf) {
    if (cf.empty()) return Tangle::infinity();
    Tangle t = Tangle::integer(static_cast<int>(cf.back()));
    for (std::size_t i = cf.size() - 1; i-- > 0;)
        t = tangle_sum(Tangle::integer(static_cast<int>(cf[i])), reciprocal(t));
    return t;
}

}  // namespace knot
