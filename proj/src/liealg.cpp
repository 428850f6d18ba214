#include "brstlab/liealg.hpp"

#include "brstlab/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace brst {

LieAlgebra::LieAlgebra(int dim, std::string name) : dim_(dim), name_(std::move(name))
{
    if (dim < 1 || dim > 16)
        throw ConfigError("Lie algebra dimension must be in 1..16");
    f_.assign(static_cast<size_t>(dim) * dim * dim, mpq_class(0));
}

LieAlgebra LieAlgebra::abelian(int k)
{
    return LieAlgebra(k, "abelian:" + std::to_string(k));
}

LieAlgebra LieAlgebra::su2()
{
    LieAlgebra L(3, "su2");
    L.set_bracket(2, 0, 1, 1);
    L.set_bracket(0, 1, 2, 1);
    L.set_bracket(1, 2, 0, 1);
    return L;
}

LieAlgebra LieAlgebra::aff1()
{
    LieAlgebra L(2, "aff1");
    L.set_bracket(1, 0, 1, 1);
    return L;
}

void LieAlgebra::set_bracket(int c, int a, int b, const mpq_class& v)
{
    set(c, a, b, v);
    set(c, b, a, -v);
}

bool LieAlgebra::is_abelian() const
{
    for (const auto& x : f_)
        if (sgn(x) != 0)
            return false;
    return true;
}

std::vector<mpq_class> LieAlgebra::trace_form() const
{
    std::vector<mpq_class> chi(dim_);
    for (int a = 0; a < dim_; ++a) {
        mpq_class s = 0;
        for (int b = 0; b < dim_; ++b)
            s += f(b, a, b);
        chi[a] = s / 2;
    }
    return chi;
}

LieAlgebra LieAlgebra::rebased(const std::vector<std::vector<mpq_class>>& M,
                               const std::vector<std::vector<mpq_class>>& Minv) const
{
    // [e'_a, e'_b] = sum M[p][a] M[q][b] f^r_pq e_r, and e_r = sum Minv[c][r] e'_c
    LieAlgebra out(dim_, name_ + "'");
    const int n = dim_;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<mpq_class> br(n);
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) {
                    mpq_class w = M[p][a] * M[q][b];
                    if (sgn(w) == 0)
                        continue;
                    for (int r = 0; r < n; ++r)
                        br[r] += w * f(r, p, q);
                }
            for (int c = 0; c < n; ++c) {
                mpq_class v = 0;
                for (int r = 0; r < n; ++r)
                    v += Minv[c][r] * br[r];
                out.set(c, a, b, v);
            }
        }
    return out;
}

std::string Violation::str() const
{
    std::ostringstream os;
    os << kind << " violation at (";
    for (size_t k = 0; k < indices.size(); ++k)
        os << (k ? "," : "") << indices[k];
    os << ")";
    return os.str();
}

std::optional<Violation> validate(const LieAlgebra& L)
{
    const int n = L.dim();
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b)
                if (L.f(c, a, b) != -L.f(c, b, a))
                    return Violation{"antisymmetry", {c + 1, a + 1, b + 1}};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    mpq_class s = 0;
                    for (int e = 0; e < n; ++e)
                        s += L.f(e, a, b) * L.f(d, e, c) + L.f(e, b, c) * L.f(d, e, a) +
                             L.f(e, c, a) * L.f(d, e, b);
                    if (sgn(s) != 0)
                        return Violation{"jacobi", {a + 1, b + 1, c + 1, d + 1}};
                }
    return std::nullopt;
}

namespace {

mpq_class json_rational(const nlohmann::json& v)
{
    if (v.is_number_integer())
        return mpq_class(v.get<long>());
    if (v.is_string()) {
        mpq_class q;
        if (q.set_str(v.get<std::string>(), 10) != 0 || q.get_den() == 0)
            throw ConfigError("bad rational in Lie algebra file: " + v.dump());
        q.canonicalize();
        return q;
    }
    throw ConfigError("structure constants must be integers or rational strings");
}

} // namespace

LieAlgebra LieAlgebra::from_json(const std::string& text, std::string name)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("Lie algebra JSON: ") + e.what());
    }
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw ConfigError("Lie algebra JSON needs integer 'dim'");
    LieAlgebra L(j["dim"].get<int>(), std::move(name));
    if (j.contains("f")) {
        for (const auto& e : j["f"]) {
            if (!e.is_array() || e.size() != 4)
                throw ConfigError("each entry of 'f' must be [c,a,b,value]");
            int c = e[0].get<int>(), a = e[1].get<int>(), b = e[2].get<int>();
            if (a >= b)
                throw ConfigError("entries of 'f' must have a < b");
            for (int x : {a, b, c})
                if (x < 1 || x > L.dim())
                    throw ConfigError("index out of range in 'f'");
            L.set_bracket(c - 1, a - 1, b - 1, json_rational(e[3]));
        }
    }
    if (auto v = validate(L))
        throw ConfigError("invalid Lie algebra: " + v->str());
    return L;
}

LieAlgebra LieAlgebra::from_spec(const std::string& spec)
{
    if (spec == "su2")
        return su2();
    if (spec == "aff1")
        return aff1();
    if (spec.rfind("abelian:", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(spec.substr(8));
        } catch (const std::exception&) {
            throw ConfigError("bad abelian dimension in '" + spec + "'");
        }
        return abelian(k);
    }
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1));
        if (!in)
            throw ConfigError("cannot open " + spec.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        return from_json(ss.str(), spec.substr(1));
    }
    throw ConfigError("unknown Lie algebra '" + spec + "'");
}

} // namespace brst
