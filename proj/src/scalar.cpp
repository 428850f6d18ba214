#include "brstlab/scalar.hpp"

#include "brstlab/errors.hpp"

#include <ostream>

namespace brst {

Scalar& Scalar::operator+=(const Scalar& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero())
        throw DivisionError("division by zero scalar");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::string Scalar::str() const
{
    const bool hasRe = sgn(re_) != 0;
    const bool hasIm = sgn(im_) != 0;
    if (!hasIm)
        return re_.get_str();
    std::string imPart;
    if (im_ == 1)
        imPart = "i";
    else if (im_ == -1)
        imPart = "-i";
    else
        imPart = im_.get_str() + "*i";
    if (!hasRe)
        return imPart;
    std::string s = "(" + re_.get_str();
    if (sgn(im_) > 0)
        s += "+";
    return s + imPart + ")";
}

namespace {

mpq_class parse_rational(const std::string& t)
{
    if (t.empty())
        throw ParseError("empty rational");
    mpq_class q;
    if (q.set_str(t, 10) != 0)
        throw ParseError("bad rational '" + t + "'");
    if (q.get_den() == 0)
        throw ParseError("zero denominator in '" + t + "'");
    q.canonicalize();
    return q;
}

// "b*i", "i", "-i", "bi"
mpq_class parse_imag(std::string t)
{
    if (!t.empty() && t.back() == 'i')
        t.pop_back();
    if (!t.empty() && t.back() == '*')
        t.pop_back();
    if (t.empty() || t == "+")
        return 1;
    if (t == "-")
        return -1;
    if (t.front() == '+')
        t.erase(0, 1);
    return parse_rational(t);
}

} // namespace

Scalar Scalar::parse(const std::string& text)
{
    std::string t;
    for (char c : text)
        if (c != ' ')
            t += c;
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')')
        t = t.substr(1, t.size() - 2);
    if (t.empty())
        throw ParseError("empty scalar");
    if (t.back() != 'i') {
        if (t.front() == '+')
            t.erase(0, 1);
        return Scalar(parse_rational(t));
    }
    // split at the last sign that is not leading
    size_t split = std::string::npos;
    for (size_t k = t.size(); k-- > 1;)
        if (t[k] == '+' || t[k] == '-') {
            split = k;
            break;
        }
    if (split == std::string::npos)
        return Scalar(0, parse_imag(t));
    std::string re = t.substr(0, split);
    if (re.front() == '+')
        re.erase(0, 1);
    return Scalar(parse_rational(re), parse_imag(t.substr(split)));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s)
{
    return os << s.str();
}

} // namespace brst
