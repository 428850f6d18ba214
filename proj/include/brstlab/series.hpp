#pragma once

#include "brstlab/errors.hpp"
#include "brstlab/scalar.hpp"

#include <string>
#include <vector>

namespace brst {

/// Power series in the formal parameter lambda, truncated after lambda^order.
template <class T>
class Series {
public:
    Series() : c_(1) {}
    explicit Series(int order) : c_(check_order(order) + 1) {}

    static Series constant(const T& v, int order) { return monomial(v, 0, order); }

    /// v * lambda^power; vanishes if power > order
    static Series monomial(const T& v, int power, int order)
    {
        Series s(order);
        if (power >= 0 && power <= order)
            s.c_[power] = v;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const T& operator[](int r) const { return c_.at(r); }
    T& at(int r) { return c_.at(r); }
    const std::vector<T>& coeffs() const { return c_; }

    bool is_zero() const
    {
        for (const T& x : c_)
            if (!x.is_zero())
                return false;
        return true;
    }

    /// Lowest r with a nonzero coefficient; order()+1 for the zero series.
    int valuation() const
    {
        for (int r = 0; r <= order(); ++r)
            if (!c_[r].is_zero())
                return r;
        return order() + 1;
    }

    /// Same coefficients at a different truncation (padding with zeros).
    Series with_order(int order) const
    {
        Series s(order);
        for (int r = 0; r <= std::min(order, this->order()); ++r)
            s.c_[r] = c_[r];
        return s;
    }

    /// Multiplication by lambda^k (k >= 0), truncated.
    Series shifted(int k) const
    {
        Series s(order());
        for (int r = 0; r + k <= order(); ++r)
            s.c_[r + k] = c_[r];
        return s;
    }

    Series& operator+=(const Series& o)
    {
        same_order(o);
        for (size_t r = 0; r < c_.size(); ++r)
            c_[r] += o.c_[r];
        return *this;
    }
    Series& operator-=(const Series& o)
    {
        same_order(o);
        for (size_t r = 0; r < c_.size(); ++r)
            c_[r] -= o.c_[r];
        return *this;
    }
    Series& operator*=(const Scalar& k)
    {
        for (T& x : c_)
            x *= k;
        return *this;
    }
    Series operator-() const
    {
        Series s(*this);
        for (T& x : s.c_)
            x = -x;
        return s;
    }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, const Scalar& k) { return a *= k; }
    friend Series operator*(const Scalar& k, Series a) { return a *= k; }

    friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    void same_order(const Series& o) const
    {
        if (o.order() != order())
            throw ConfigError("series order mismatch: " + std::to_string(order()) + " vs " +
                              std::to_string(o.order()));
    }

private:
    static int check_order(int order)
    {
        if (order < 0)
            throw ConfigError("negative truncation order");
        return order;
    }

    std::vector<T> c_;
};

/// Cauchy product with a payload product that itself returns a series:
/// mul(x, y, m) must return a Series<T> of order m (the lambda-expansion of x*y).
template <class T, class Mul>
Series<T> series_product(const Series<T>& a, const Series<T>& b, Mul&& mul)
{
    a.same_order(b);
    const int n = a.order();
    Series<T> out(n);
    for (int i = 0; i <= n; ++i) {
        if (a[i].is_zero())
            continue;
        for (int j = 0; i + j <= n; ++j) {
            if (b[j].is_zero())
                continue;
            const int room = n - i - j;
            Series<T> p = mul(a[i], b[j], room);
            for (int r = 0; r <= room; ++r)
                out.at(i + j + r) += p[r];
        }
    }
    return out;
}

/// Divide by lambda; the result has order one less.
template <class T>
Series<T> lambda_divide(const Series<T>& a)
{
    if (!a[0].is_zero())
        throw DivisionError("lambda_divide: nonzero constant term");
    if (a.order() == 0)
        throw DivisionError("lambda_divide: no order left to divide");
    Series<T> s(a.order() - 1);
    for (int r = 1; r <= a.order(); ++r)
        s.at(r - 1) = a[r];
    return s;
}

using ScalarSeries = Series<Scalar>;

ScalarSeries series_mul(const ScalarSeries& a, const ScalarSeries& b);
ScalarSeries series_invert(const ScalarSeries& a);
std::string series_str(const ScalarSeries& s);

} // namespace brst
