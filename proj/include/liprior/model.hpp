#pragma once

#include <string>
#include <vector>

#include "liprior/expr.hpp"
#include "liprior/support.hpp"

namespace liprior {

struct ParamDecl {
    std::string name;
    SupportSpec support;
};

struct ObsDecl {
    std::string name;
    SupportSpec support;
};

// A parsed data-model density: parameter and observable declarations plus the
// log-density expression over them. Evaluation slots are laid out parameters
// first, observable last.
struct ModelSpec {
    std::string name;
    std::vector<ParamDecl> params;
    ObsDecl obs;
    ExprPtr logpdf;

    int param_count() const { return static_cast<int>(params.size()); }
    int obs_slot() const { return param_count(); }
    int param_index(const std::string& var) const;  // -1 if not a parameter

    // log p(x | theta); theta must have param_count() entries.
    double log_density(std::span<const double> theta, double x) const;
    double density(std::span<const double> theta, double x) const;

    bool theta_in_support(std::span<const double> theta) const;
};

// Canonical text form; parse_model(print_model(m)) reproduces the same AST.
std::string print_model(const ModelSpec& m);

}  // namespace liprior
