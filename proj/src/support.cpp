#include "liprior/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liprior/errors.hpp"
#include "liprior/expr.hpp"

namespace liprior {

SupportSpec SupportSpec::interval(double lo, double hi, bool lo_open, bool hi_open) {
    if (std::isnan(lo) || std::isnan(hi))
        throw MalformedSupport("interval endpoint is NaN");
    if (!(lo < hi))
        throw MalformedSupport("interval lower endpoint must be strictly below the upper");
    SupportSpec s;
    s.kind = SupportKind::Interval;
    s.lo = lo;
    s.hi = hi;
    s.lo_open = lo_open;
    s.hi_open = hi_open;
    return s;
}

SupportSpec SupportSpec::finite_set(std::vector<double> values) {
    if (values.empty()) throw MalformedSupport("discrete support set is empty");
    std::sort(values.begin(), values.end());
    for (size_t i = 1; i < values.size(); ++i)
        if (values[i] == values[i - 1])
            throw MalformedSupport("duplicate value in discrete support set");
    SupportSpec s;
    s.kind = SupportKind::FiniteSet;
    s.values = std::move(values);
    s.lo = s.values.front();
    s.hi = s.values.back();
    return s;
}

SupportSpec SupportSpec::naturals() {
    SupportSpec s;
    s.kind = SupportKind::Naturals;
    s.lo = 0.0;
    s.hi = std::numeric_limits<double>::infinity();
    return s;
}

bool SupportSpec::contains(double x) const {
    switch (kind) {
        case SupportKind::Interval:
            if (lo_open ? !(x > lo) : !(x >= lo)) return false;
            if (hi_open ? !(x < hi) : !(x <= hi)) return false;
            return true;
        case SupportKind::FiniteSet:
            return std::binary_search(values.begin(), values.end(), x);
        case SupportKind::Naturals:
            return x >= 0.0 && x == std::floor(x) && std::isfinite(x);
    }
    return false;
}

double SupportSpec::boundary_distance(double x) const {
    if (kind != SupportKind::Interval)
        return std::numeric_limits<double>::infinity();
    double d = std::numeric_limits<double>::infinity();
    if (std::isfinite(lo)) d = std::min(d, x - lo);
    if (std::isfinite(hi)) d = std::min(d, hi - x);
    return d;
}

namespace {

std::string format_bound(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return format_double(v);
}

}  // namespace

std::string SupportSpec::to_string() const {
    switch (kind) {
        case SupportKind::Interval:
            return "(" + format_bound(lo) + ", " + format_bound(hi) + ")";
        case SupportKind::FiniteSet: {
            std::string out = "{";
            for (size_t i = 0; i < values.size(); ++i) {
                if (i) out += ", ";
                out += format_double(values[i]);
            }
            return out + "}";
        }
        case SupportKind::Naturals: return "naturals";
    }
    return "?";
}

bool SupportSpec::operator==(const SupportSpec& other) const {
    if (kind != other.kind) return false;
    if (kind == SupportKind::FiniteSet) return values == other.values;
    if (kind == SupportKind::Naturals) return true;
    return lo == other.lo && hi == other.hi && lo_open == other.lo_open &&
           hi_open == other.hi_open;
}

}  // namespace liprior
