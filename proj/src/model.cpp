#include "liprior/model.hpp"

#include <cmath>

#include "liprior/errors.hpp"

namespace liprior {

int ModelSpec::param_index(const std::string& var) const {
    for (size_t i = 0; i < params.size(); ++i)
        if (params[i].name == var) return static_cast<int>(i);
    return -1;
}

double ModelSpec::log_density(std::span<const double> theta, double x) const {
    std::vector<double> slots(theta.begin(), theta.end());
    slots.push_back(x);
    return logpdf->eval(slots);
}

double ModelSpec::density(std::span<const double> theta, double x) const {
    double l = log_density(theta, x);
    double p = std::exp(l);
    if (!std::isfinite(p)) throw DomainError("density overflow");
    return p;
}

bool ModelSpec::theta_in_support(std::span<const double> theta) const {
    if (theta.size() != params.size()) return false;
    for (size_t i = 0; i < params.size(); ++i)
        if (!params[i].support.contains(theta[i])) return false;
    return true;
}

std::string print_model(const ModelSpec& m) {
    std::string out = "model \"" + m.name + "\"\n";
    for (const auto& p : m.params)
        out += "param " + p.name + " in " + p.support.to_string() + "\n";
    out += "obs " + m.obs.name + " in " + m.obs.support.to_string() +
           (m.obs.support.is_discrete() ? " discrete" : " continuous") + "\n";
    out += "logpdf = " + m.logpdf->to_string() + "\n";
    return out;
}

}  // namespace liprior
