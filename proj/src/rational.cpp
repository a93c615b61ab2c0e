#include "carcass/rational.hpp"

#include "carcass/errors.hpp"

#include <cctype>

namespace carcass {

namespace {

bool is_integer_token(const std::string& s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text)
{
    const auto slash = text.find('/');
    // GMP rejects an explicit leading '+'.
    const auto strip_plus = [](const std::string& s) {
        return (!s.empty() && s[0] == '+') ? s.substr(1) : s;
    };
    if (slash == std::string::npos) {
        if (!is_integer_token(text))
            throw ParseError("not a rational: '" + text + "'");
        return Rational(BigInt(strip_plus(text)));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
        throw ParseError("not a rational: '" + text + "'");
    if (!den.empty() && (den[0] == '+' || den[0] == '-'))
        throw ParseError("denominator must be a positive integer: '" + text + "'");
    BigInt d(den);
    if (d <= 0)
        throw ParseError("denominator must be positive: '" + text + "'");
    // Division through mpq canonicalizes (lowest terms, positive denominator).
    return Rational(BigInt(strip_plus(num))) / Rational(d);
}

std::string fraction_string(const Rational& r)
{
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_pow(const Rational& base, unsigned exp)
{
    Rational result(1);
    Rational b = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

bool is_dyadic(const Rational& r)
{
    const BigInt d = denominator(r);
    if (d == 1) return true;
    // Power of two iff the lowest and highest set bits coincide.
    return boost::multiprecision::lsb(d) == boost::multiprecision::msb(d);
}

BigInt binomial(unsigned n, unsigned k)
{
    BigInt result;
    mpz_bin_uiui(result.backend().data(), n, k);
    return result;
}

}  // namespace carcass
