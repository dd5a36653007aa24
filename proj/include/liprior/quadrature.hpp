#pragma once

#include <functional>

#include "liprior/support.hpp"

namespace liprior {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool diverged = false;
    long evaluations = 0;
};

struct QuadratureOptions {
    // Accepted when error <= max(abs_tol, rel_tol * |value|).
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    long max_evaluations = 500000;
};

using ScalarFn = std::function<double(double)>;

// Adaptive Gauss-Kronrod (7/15) integration over a continuous support.
// Unbounded endpoints are mapped to a finite interval: (a,inf) via
// theta = a + t/(1-t), (-inf,b) via theta = b - t/(1-t), (-inf,inf) via
// theta = t/(1-t^2). Endpoint singularities are handled by subdivision; when
// refinement stalls, nested geometric cutoffs classify divergence. Integrand
// DomainErrors propagate; non-finite integrand values mark the result
// diverged.
QuadratureResult integrate(const ScalarFn& f, const SupportSpec& support,
                           QuadratureOptions opts = {});

// Sum over a discrete support. Finite sets are summed exactly in ascending
// order. Naturals are summed until a run of 10 consecutive terms falls below
// max(abs_tol, rel_tol * |partial sum|); the evaluation budget caps the sum
// and sets the diverged flag when no truncation point is found.
QuadratureResult sum_discrete(const ScalarFn& f, const SupportSpec& support,
                              QuadratureOptions opts = {});

// Dispatch on the support kind.
QuadratureResult expectation_quadrature(const ScalarFn& f, const SupportSpec& support,
                                        QuadratureOptions opts = {});

namespace detail {

enum class DivergenceVerdict { Converged, Growth, Stalled };

struct ExtendedQuadratureResult {
    QuadratureResult result;
    DivergenceVerdict verdict = DivergenceVerdict::Converged;
};

// integrate() plus the cutoff-probe verdict, for properness classification.
ExtendedQuadratureResult integrate_extended(const ScalarFn& f, const SupportSpec& support,
                                            QuadratureOptions opts);

}  // namespace detail

}  // namespace liprior
