#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace brst {

/// Exact Gaussian rational re + i*im.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}
    Scalar(const mpq_class& re) : re_(re) { re_.canonicalize(); }
    Scalar(const mpq_class& re, const mpq_class& im) : re_(re), im_(im)
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar i() { return Scalar(0, 1); }
    static Scalar frac(long num, long den) { return Scalar(mpq_class(num, den)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    Scalar conj() const { return Scalar(re_, -im_); }

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const { return Scalar(-re_, -im_); }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // "3/2", "-i", "1/2+3i"
    std::string str() const;

    // Accepts the output format of str() plus plain integers and fractions.
    static Scalar parse(const std::string& text);

private:
    mpq_class re_;
    mpq_class im_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace brst
