#pragma once

#include "carcass/rational.hpp"

#include <mpfr.h>

#include <string>

namespace carcass {

/// RAII wrapper over an mpfr number with an explicit precision in bits.
/// Every operation rounds to nearest at the wider operand's precision.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t precision_bits = 128);
    BigFloat(const Rational& value, mpfr_prec_t precision_bits);
    BigFloat(unsigned long value, mpfr_prec_t precision_bits);
    BigFloat(const BigInt& value, mpfr_prec_t precision_bits);

    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    const mpfr_t& raw() const { return v_; }

    BigFloat operator+(const BigFloat& rhs) const;
    BigFloat operator-(const BigFloat& rhs) const;
    BigFloat operator*(const BigFloat& rhs) const;
    BigFloat operator/(const BigFloat& rhs) const;
    BigFloat& operator+=(const BigFloat& rhs);

    BigFloat sqrt() const;
    BigFloat abs() const;

    /// Exact scaling by 2^e.
    BigFloat ldexp(long e) const;

    int compare(const BigFloat& rhs) const { return mpfr_cmp(v_, rhs.v_); }
    bool operator<(const BigFloat& rhs) const { return compare(rhs) < 0; }
    bool operator>(const BigFloat& rhs) const { return compare(rhs) > 0; }
    bool operator<=(const BigFloat& rhs) const { return compare(rhs) <= 0; }
    bool operator>=(const BigFloat& rhs) const { return compare(rhs) >= 0; }
    bool operator==(const BigFloat& rhs) const { return compare(rhs) == 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Fixed-point decimal with the given fractional digits, e.g. "1.414...".
    std::string str_fixed(unsigned digits) const;

    static BigFloat two_pow(long e, mpfr_prec_t precision_bits);

private:
    mpfr_t v_;
};

/// |a - b| / max(|a|, |b|); zero when both vanish.
BigFloat relative_diff(const BigFloat& a, const BigFloat& b);

/// Kahan accumulator: reintroduces the rounding error of each addition into
/// the next one.
class CompensatedSum {
public:
    explicit CompensatedSum(mpfr_prec_t precision_bits)
        : sum_(precision_bits), compensation_(precision_bits) {}

    void add(const BigFloat& value);
    const BigFloat& value() const { return sum_; }

private:
    BigFloat sum_;
    BigFloat compensation_;
};

}  // namespace carcass
