#include "brstlab/series.hpp"

namespace brst {

ScalarSeries series_mul(const ScalarSeries& a, const ScalarSeries& b)
{
    return series_product(a, b, [](const Scalar& x, const Scalar& y, int m) {
        return ScalarSeries::constant(x * y, m);
    });
}

ScalarSeries series_invert(const ScalarSeries& a)
{
    if (a[0].is_zero())
        throw InversionError("series_invert: leading coefficient is zero");
    const int n = a.order();
    const Scalar inv0 = Scalar(1) / a[0];
    ScalarSeries b(n);
    b.at(0) = inv0;
    for (int r = 1; r <= n; ++r) {
        Scalar acc;
        for (int j = 1; j <= r; ++j)
            acc += a[j] * b[r - j];
        b.at(r) = -(acc * inv0);
    }
    return b;
}

std::string series_str(const ScalarSeries& s)
{
    std::string out;
    for (int r = 0; r <= s.order(); ++r) {
        if (s[r].is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        out += s[r].str();
        if (r == 1)
            out += "*lambda";
        else if (r > 1)
            out += "*lambda^" + std::to_string(r);
    }
    return out.empty() ? "0" : out;
}

} // namespace brst
