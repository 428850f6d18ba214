#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace brst {

/// Real Lie algebra given by rational structure constants f^c_ab = <e^c,[e_a,e_b]>.
/// Indices are 0-based in code and 1-based in all text.
class LieAlgebra {
public:
    LieAlgebra() = default;
    explicit LieAlgebra(int dim, std::string name = "");

    static LieAlgebra abelian(int k);
    static LieAlgebra su2();
    static LieAlgebra aff1();

    /// "abelian:<k>", "su2", "aff1", or "@path.json"
    static LieAlgebra from_spec(const std::string& spec);
    /// {"dim": n, "f": [[c,a,b,value], ...]} with 1-based indices and a < b
    static LieAlgebra from_json(const std::string& text, std::string name = "custom");

    int dim() const { return dim_; }
    const std::string& name() const { return name_; }

    const mpq_class& f(int c, int a, int b) const { return f_[idx(c, a, b)]; }
    void set(int c, int a, int b, const mpq_class& v) { f_[idx(c, a, b)] = v; }
    /// sets f^c_ab = v and f^c_ba = -v
    void set_bracket(int c, int a, int b, const mpq_class& v);

    bool is_abelian() const;

    /// chi_a = 1/2 sum_b f^b_ab
    std::vector<mpq_class> trace_form() const;

    /// Change of basis e'_a = sum_b M[b][a] e_b; Minv must be the inverse of M.
    LieAlgebra rebased(const std::vector<std::vector<mpq_class>>& M,
                       const std::vector<std::vector<mpq_class>>& Minv) const;

private:
    size_t idx(int c, int a, int b) const { return (static_cast<size_t>(c) * dim_ + a) * dim_ + b; }

    int dim_ = 0;
    std::string name_;
    std::vector<mpq_class> f_;
};

struct Violation {
    std::string kind; // "antisymmetry" or "jacobi"
    std::vector<int> indices; // 1-based
    std::string str() const;
};

/// First violated antisymmetry or Jacobi identity, if any.
std::optional<Violation> validate(const LieAlgebra& L);

} // namespace brst
