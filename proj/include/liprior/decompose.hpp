#pragma once

#include <vector>

#include "liprior/model.hpp"

namespace liprior {

struct MixedTerm {
    ExprPtr theta_factor;  // depends only on parameters (sign/constants folded in)
    ExprPtr data_factor;   // depends only on the observable
};

// The log-density split into observable-only terms, parameter-only terms, and
// multiplicatively separable mixed terms; summing everything back reproduces
// the log-density pointwise.
struct SeparableDecomposition {
    std::vector<ExprPtr> x_terms;      // includes pure constants
    std::vector<ExprPtr> theta_terms;  // signs folded in
    std::vector<MixedTerm> mixed;
};

// Splits the top-level sum of the log-density. A term that depends on both
// the observable and a parameter must factor as (theta-only) x (x-only) after
// flattening products, otherwise NotSeparable is thrown with a rewrite hint.
SeparableDecomposition decompose_log_density(const ModelSpec& m);

}  // namespace liprior
