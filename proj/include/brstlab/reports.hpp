#pragma once

#include "brstlab/reduction.hpp"

#include <string>

namespace brst {

struct RunReport {
    std::string json;
    int failures = 0;
};

/// variant: standard | perturbed; emit: reduced-table | invariants | obstruction
RunReport torus_report(const std::string& variant, int order, const std::string& emit, int maxDegree);
/// backend: flat:<d>,<k> or flat-weyl:<d>,<k>
RunReport reduce_report(const std::string& backend, int order, int maxDegree);

/// op: star | brst0 | brstW | koszul | ce | restrict; `second` is the right factor for star
std::string eval_expression(const Context& ctx, const std::string& expr, const std::string& op, int order,
                            const std::string& second = "", const Scalar& kappa = Scalar(0));

} // namespace brst
