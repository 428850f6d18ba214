#include "brstlab/expr.hpp"

#include "brstlab/errors.hpp"

#include <cctype>

namespace brst {

namespace {

/// ghost word and power of lambda
using Key = std::pair<GhostWord, int>;
using Poly = std::map<Key, PhaseFunction>;

void poly_add(Poly& acc, const Key& k, const PhaseFunction& f)
{
    auto& slot = acc[k];
    slot += f;
    if (slot.is_zero())
        acc.erase(k);
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly out;
    for (const auto& [u, f] : a)
        for (const auto& [v, g] : b)
            if (SignedWord s = wedge(u.first, v.first))
                poly_add(out, {s.w, u.second + v.second}, (f * g) * Scalar(s.sign));
    return out;
}

Poly poly_const(const PhaseFunction& f, int lam = 0)
{
    Poly p;
    if (!f.is_zero())
        p[{GhostWord{}, lam}] = f;
    return p;
}

class Parser {
public:
    Parser(const std::string& text, const Backend& B) : s_(text), B_(B) {}

    Poly parse()
    {
        Poly v = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(msg + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Poly expr()
    {
        Poly acc;
        bool neg = eat('-');
        if (!neg)
            eat('+');
        Poly t = term();
        for (auto& [w, f] : t)
            poly_add(acc, w, neg ? -f : f);
        for (;;) {
            if (eat('+'))
                neg = false;
            else if (eat('-'))
                neg = true;
            else
                break;
            for (auto& [w, f] : term())
                poly_add(acc, w, neg ? -f : f);
        }
        return acc;
    }

    Poly term()
    {
        Poly acc = factor();
        while (eat('*'))
            acc = poly_mul(acc, factor());
        return acc;
    }

    long integer(bool allowSign)
    {
        skip();
        size_t start = pos_;
        if (allowSign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
            ++pos_;
        size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (digits == pos_)
            fail("expected integer");
        try {
            return std::stol(s_.substr(start, pos_ - start));
        } catch (const std::exception&) {
            fail("integer out of range");
        }
    }

    Poly factor()
    {
        bool single = false;
        int var = -1;
        Poly base = atom(single, var);
        skip();
        // '^' followed by 'e' continues a ghost word, handled in atom
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            long e = integer(true);
            if (var >= 0) {
                if (B_.var_kind(var) == VarKind::Poly && e < 0)
                    fail("negative power of polynomial variable " + B_.var_names()[var]);
                if (e < -1000 || e > 1000)
                    fail("exponent out of range");
                return poly_const(PhaseFunction::monomial(B_.var(var, static_cast<int>(e))));
            }
            if (e < 0)
                fail("negative power of a compound expression");
            if (e > 1000)
                fail("exponent out of range");
            Poly acc = poly_const(PhaseFunction(Scalar(1)));
            for (long k = 0; k < e; ++k)
                acc = poly_mul(acc, base);
            return acc;
        }
        (void)single;
        return base;
    }

    Poly ghost_word()
    {
        // at 'e'; read e^k / e_k factors joined by '^' while the next factor is a ghost generator
        SignedWord acc{1, {}};
        std::vector<Gen> gens;
        for (;;) {
            ++pos_; // 'e'
            if (pos_ >= s_.size() || (s_[pos_] != '^' && s_[pos_] != '_'))
                fail("expected e^k or e_k");
            const bool isGhost = s_[pos_] == '^';
            ++pos_;
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("missing ghost index");
            int idx = std::stoi(s_.substr(start, pos_ - start));
            if (idx < 1 || idx > B_.momenta() || idx > 16)
                fail("ghost index " + std::to_string(idx) + " out of range");
            gens.push_back({isGhost, idx - 1});
            if (pos_ + 1 < s_.size() && s_[pos_] == '^' && s_[pos_ + 1] == 'e') {
                ++pos_;
                continue;
            }
            break;
        }
        for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
            SignedWord s = left_mul(*it, acc.w);
            acc = {acc.sign * s.sign, s.w};
            if (!s)
                break;
        }
        Poly p;
        if (acc)
            p[{acc.w, 0}] = PhaseFunction(Scalar(acc.sign));
        return p;
    }

    Poly atom(bool& single, int& var)
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        Poly p;
        if (c == '(') {
            ++pos_;
            p = expr();
            if (!eat(')'))
                fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            std::string num = s_.substr(start, pos_ - start);
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                size_t d = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
                if (d == pos_)
                    fail("expected denominator");
                num += "/" + s_.substr(d, pos_ - d);
            }
            mpq_class q;
            if (q.set_str(num, 10) != 0 || q.get_den() == 0)
                fail("bad rational " + num);
            q.canonicalize();
            return poly_const(PhaseFunction(Scalar(q)));
        }
        if (c == 'e' && pos_ + 1 < s_.size() && (s_[pos_ + 1] == '^' || s_[pos_ + 1] == '_'))
            return ghost_word();
        if (s_.compare(pos_, 6, "lambda") == 0 &&
            (pos_ + 6 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 6])))) {
            pos_ += 6;
            return poly_const(PhaseFunction(Scalar(1)), 1);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (name == "i")
                return poly_const(PhaseFunction(Scalar::i()));
            int v = B_.var_index(name);
            if (v < 0)
                fail("unknown variable '" + name + "' for backend " + B_.name());
            single = true;
            var = v;
            return poly_const(B_.variable(v));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    const Backend& B_;
    size_t pos_ = 0;
};

} // namespace

SuperField parse_field(const std::string& text, const Backend& B, int order)
{
    Poly p = Parser(text, B).parse();
    SuperField x(order);
    for (const auto& [k, f] : p) {
        if (k.second > order)
            continue;
        FunSeries s(order);
        s.at(k.second) = f;
        x.add(k.first, s);
    }
    return x;
}

PhaseFunction parse_function(const std::string& text, const Backend& B)
{
    Poly p = Parser(text, B).parse();
    PhaseFunction f;
    for (const auto& [k, g] : p) {
        if (k.first != GhostWord{})
            throw ParseError("ghost word not allowed in a function expression: '" + text + "'");
        if (k.second != 0)
            throw ParseError("lambda not allowed in a function expression: '" + text + "'");
        f = g;
    }
    return f;
}

std::string field_str(const SuperField& x, const Backend& B)
{
    if (x.is_zero())
        return "0";
    std::string out;
    for (const auto& [w, s] : x.terms()) {
        std::string c = B.str(s);
        std::string t = w == GhostWord{} ? c : word_str(w) + "*(" + c + ")";
        out += out.empty() ? t : " + " + t;
    }
    return out;
}

} // namespace brst
