#pragma once

#include <string>
#include <vector>

namespace liprior {

enum class SupportKind { Interval, FiniteSet, Naturals };

// Support of a declared variable: a continuous interval (endpoints may be
// +-inf), a finite set of discrete values, or the naturals 0,1,2,...
struct SupportSpec {
    SupportKind kind = SupportKind::Interval;
    double lo = 0.0;
    double hi = 0.0;
    bool lo_open = true;
    bool hi_open = true;
    std::vector<double> values;  // FiniteSet, kept sorted ascending

    static SupportSpec interval(double lo, double hi, bool lo_open = true,
                                bool hi_open = true);
    static SupportSpec finite_set(std::vector<double> values);
    static SupportSpec naturals();

    bool is_discrete() const { return kind != SupportKind::Interval; }
    bool contains(double x) const;
    // Distance from x to the nearest interval endpoint (+inf for unbounded
    // sides or non-interval supports).
    double boundary_distance(double x) const;

    std::string to_string() const;
    bool operator==(const SupportSpec& other) const;
};

}  // namespace liprior
