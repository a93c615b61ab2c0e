#include "carcass/bigfloat.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace carcass {

BigFloat::BigFloat(mpfr_prec_t precision_bits)
{
    mpfr_init2(v_, precision_bits);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const Rational& value, mpfr_prec_t precision_bits)
{
    mpfr_init2(v_, precision_bits);
    mpfr_set_q(v_, value.backend().data(), MPFR_RNDN);
}

BigFloat::BigFloat(unsigned long value, mpfr_prec_t precision_bits)
{
    mpfr_init2(v_, precision_bits);
    mpfr_set_ui(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigInt& value, mpfr_prec_t precision_bits)
{
    mpfr_init2(v_, precision_bits);
    mpfr_set_z(v_, value.backend().data(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other)
{
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept
{
    mpfr_init2(v_, 2);
    mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other)
{
    if (this != &other) {
        mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept
{
    if (this != &other) mpfr_swap(v_, other.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

namespace {

mpfr_prec_t joint_precision(const BigFloat& a, const BigFloat& b)
{
    return std::max(a.precision(), b.precision());
}

}  // namespace

BigFloat BigFloat::operator+(const BigFloat& rhs) const
{
    BigFloat out(joint_precision(*this, rhs));
    mpfr_add(out.v_, v_, rhs.v_, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::operator-(const BigFloat& rhs) const
{
    BigFloat out(joint_precision(*this, rhs));
    mpfr_sub(out.v_, v_, rhs.v_, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::operator*(const BigFloat& rhs) const
{
    BigFloat out(joint_precision(*this, rhs));
    mpfr_mul(out.v_, v_, rhs.v_, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::operator/(const BigFloat& rhs) const
{
    BigFloat out(joint_precision(*this, rhs));
    mpfr_div(out.v_, v_, rhs.v_, MPFR_RNDN);
    return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs)
{
    mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

BigFloat BigFloat::sqrt() const
{
    BigFloat out(precision());
    mpfr_sqrt(out.v_, v_, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::abs() const
{
    BigFloat out(precision());
    mpfr_abs(out.v_, v_, MPFR_RNDN);
    return out;
}

BigFloat BigFloat::ldexp(long e) const
{
    BigFloat out(precision());
    mpfr_mul_2si(out.v_, v_, e, MPFR_RNDN);
    return out;
}

std::string BigFloat::str_fixed(unsigned digits) const
{
    const int needed = mpfr_snprintf(nullptr, 0, "%.*Rf", static_cast<int>(digits), v_);
    std::vector<char> buffer(static_cast<std::size_t>(needed) + 1);
    mpfr_snprintf(buffer.data(), buffer.size(), "%.*Rf", static_cast<int>(digits), v_);
    return std::string(buffer.data());
}

BigFloat BigFloat::two_pow(long e, mpfr_prec_t precision_bits)
{
    BigFloat out(1ul, precision_bits);
    return out.ldexp(e);
}

BigFloat relative_diff(const BigFloat& a, const BigFloat& b)
{
    const BigFloat diff = (a - b).abs();
    const BigFloat scale = std::max(a.abs(), b.abs());
    if (mpfr_zero_p(scale.raw())) return diff;
    return diff / scale;
}

void CompensatedSum::add(const BigFloat& value)
{
    const BigFloat y = value - compensation_;
    const BigFloat t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
}

}  // namespace carcass
