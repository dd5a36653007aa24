#pragma once

#include <string_view>

#include "liprior/model.hpp"

namespace liprior {

// Parse a model file (see the grammar in README.md). Throws SyntaxError,
// UnknownVariable, UnknownFunction, or MalformedSupport.
ModelSpec parse_model(std::string_view text);

// Parse a bare expression over the given variable names (slot order follows
// the vector). Used by tests and tools.
ExprPtr parse_expression(std::string_view text,
                         const std::vector<std::string>& variables);

}  // namespace liprior
