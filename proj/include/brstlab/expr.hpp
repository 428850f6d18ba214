#pragma once

#include "brstlab/grassmann.hpp"
#include "brstlab/phasespace.hpp"

#include <string>

namespace brst {

using SuperField = Graded<PhaseFunction>;

/// Parse an expression over the backend's variables, rationals, i, lambda and ghost words
/// (e^1^e_2). Powers of lambda above `order` are dropped.
SuperField parse_field(const std::string& text, const Backend& B, int order);

/// Same, but the expression must not contain ghost words.
PhaseFunction parse_function(const std::string& text, const Backend& B);

std::string field_str(const SuperField& x, const Backend& B);

} // namespace brst
