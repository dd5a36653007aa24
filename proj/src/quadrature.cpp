#include "liprior/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "liprior/errors.hpp"

namespace liprior {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1].
constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0,
};
constexpr double kWeightsK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
constexpr double kWeightsG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct UnitIntegrand {
    ScalarFn g;
    double lo, hi;
};

UnitIntegrand to_finite_interval(const ScalarFn& f, const SupportSpec& s) {
    if (s.kind != SupportKind::Interval)
        throw ComputationFailed("integrate requires a continuous interval support");
    bool lo_inf = std::isinf(s.lo), hi_inf = std::isinf(s.hi);
    if (!lo_inf && !hi_inf) return {f, s.lo, s.hi};
    if (lo_inf && hi_inf) {
        return {[f](double t) {
                    double om = 1.0 - t * t;
                    double theta = t / om;
                    double v = f(theta);
                    if (v == 0.0) return 0.0;
                    return v * (1.0 + t * t) / (om * om);
                },
                -1.0, 1.0};
    }
    if (!lo_inf) {
        double a = s.lo;
        return {[f, a](double t) {
                    double om = 1.0 - t;
                    double theta = a + t / om;
                    double v = f(theta);
                    if (v == 0.0) return 0.0;
                    return v / (om * om);
                },
                0.0, 1.0};
    }
    double b = s.hi;
    return {[f, b](double t) {
                double om = 1.0 - t;
                double theta = b - t / om;
                double v = f(theta);
                if (v == 0.0) return 0.0;
                return v / (om * om);
            },
            0.0, 1.0};
}

struct Interval {
    double lo, hi;
    double value;
    double error;
    // Heap orders by error; ties broken by position for determinism.
    bool operator<(const Interval& other) const {
        if (error != other.error) return error < other.error;
        return lo > other.lo;
    }
};

struct GKOutcome {
    double value = 0.0;
    double error = 0.0;
    bool finite = true;
};

GKOutcome gk15(const ScalarFn& g, double lo, double hi, long& evals) {
    double center = 0.5 * (lo + hi);
    double half = 0.5 * (hi - lo);
    double sum_k = 0.0, sum_g = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fsum;
        if (i == 7) {
            fsum = g(center);
            ++evals;
        } else {
            double off = half * kNodes[i];
            fsum = g(center - off) + g(center + off);
            evals += 2;
        }
        if (!std::isfinite(fsum)) return {0.0, 0.0, false};
        sum_k += kWeightsK[i] * fsum;
        if (i % 2 == 1) sum_g += kWeightsG[i / 2] * fsum;
    }
    GKOutcome out;
    out.value = sum_k * half;
    out.error = std::fabs((sum_k - sum_g) * half);
    return out;
}

double tolerance_for(const QuadratureOptions& opts, double value) {
    return std::max(opts.abs_tol, opts.rel_tol * std::fabs(value));
}

struct AdaptiveState {
    std::priority_queue<Interval> queue;
    double total_value = 0.0;
    double total_error = 0.0;
    bool hard_divergence = false;
    long evaluations = 0;
};

// Deterministic final summation: gather the queue and sum left to right.
void finalize_sums(AdaptiveState& st) {
    std::vector<Interval> parts;
    while (!st.queue.empty()) {
        parts.push_back(st.queue.top());
        st.queue.pop();
    }
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    double v = 0.0, e = 0.0;
    for (const auto& p : parts) {
        v += p.value;
        e += p.error;
    }
    st.total_value = v;
    st.total_error = e;
}

bool push_interval(AdaptiveState& st, const ScalarFn& g, double lo, double hi) {
    GKOutcome out = gk15(g, lo, hi, st.evaluations);
    if (!out.finite) {
        st.hard_divergence = true;
        return false;
    }
    st.queue.push({lo, hi, out.value, out.error});
    st.total_value += out.value;
    st.total_error += out.error;
    return true;
}

// Refine until the mixed tolerance holds or the budget runs out.
bool adaptive_refine(AdaptiveState& st, const ScalarFn& g, const QuadratureOptions& opts,
                     long budget, double min_width) {
    while (!st.queue.empty()) {
        if (st.total_error <= tolerance_for(opts, st.total_value)) {
            finalize_sums(st);
            return st.total_error <= tolerance_for(opts, st.total_value);
        }
        if (st.evaluations + 30 > budget) break;
        Interval worst = st.queue.top();
        if (worst.hi - worst.lo < min_width) break;  // cannot refine further
        st.queue.pop();
        st.total_value -= worst.value;
        st.total_error -= worst.error;
        double mid = 0.5 * (worst.lo + worst.hi);
        if (!push_interval(st, g, worst.lo, mid)) return false;
        if (!push_interval(st, g, mid, worst.hi)) return false;
    }
    finalize_sums(st);
    return !st.queue.empty() &&
           st.total_error <= tolerance_for(opts, st.total_value);
}

// Nested-cutoff classification for integrands the adaptive pass could not
// settle: integrate over interiors shrinking geometrically toward the
// endpoints and watch the increments.
detail::DivergenceVerdict cutoff_probe(const ScalarFn& g, double lo, double hi,
                                       long& evaluations) {
    const int kLevels = 16;
    double width = hi - lo;
    std::vector<double> values;
    QuadratureOptions probe_opts;
    probe_opts.abs_tol = 1e-8;
    probe_opts.rel_tol = 1e-8;
    for (int k = 0; k < kLevels; ++k) {
        double delta = 0.5 * width * std::pow(4.0, -(k + 1));
        AdaptiveState st;
        if (!push_interval(st, g, lo + delta, hi - delta)) return detail::DivergenceVerdict::Growth;
        adaptive_refine(st, g, probe_opts, 8000, 1e-15 * width);
        evaluations += st.evaluations;
        if (st.hard_divergence) return detail::DivergenceVerdict::Growth;
        values.push_back(st.total_value);
        if (std::fabs(st.total_value) > 1e100) return detail::DivergenceVerdict::Growth;
    }
    // Increment analysis over the last levels.
    int growing = 0, shrinking = 0;
    for (size_t k = values.size() - 5; k < values.size(); ++k) {
        double inc = std::fabs(values[k] - values[k - 1]);
        double prev = std::fabs(values[k - 1] - values[k - 2]);
        if (inc <= 1e-12 * std::max(1.0, std::fabs(values[k]))) {
            ++shrinking;
            continue;
        }
        if (prev == 0.0 || inc >= 0.9 * prev)
            ++growing;
        else
            ++shrinking;
    }
    if (growing >= 4) return detail::DivergenceVerdict::Growth;
    if (shrinking >= 4) return detail::DivergenceVerdict::Converged;
    return detail::DivergenceVerdict::Stalled;
}

}  // namespace

namespace detail {

ExtendedQuadratureResult integrate_extended(const ScalarFn& f, const SupportSpec& support,
                                            QuadratureOptions opts) {
    UnitIntegrand unit = to_finite_interval(f, support);
    double width = unit.hi - unit.lo;
    double min_width = 1e-15 * width;

    ExtendedQuadratureResult out;
    AdaptiveState st;
    // Seed with a few subintervals so localized mass is not missed.
    const int kSeed = 8;
    for (int i = 0; i < kSeed && !st.hard_divergence; ++i)
        push_interval(st, unit.g, unit.lo + width * i / kSeed,
                      unit.lo + width * (i + 1) / kSeed);

    bool converged = false;
    if (!st.hard_divergence) {
        long first_budget = std::min<long>(opts.max_evaluations, 60000);
        converged = adaptive_refine(st, unit.g, opts, first_budget, min_width);
    }

    if (!converged && !st.hard_divergence) {
        DivergenceVerdict verdict = cutoff_probe(unit.g, unit.lo, unit.hi, st.evaluations);
        if (verdict == DivergenceVerdict::Growth) {
            out.result = {st.total_value, st.total_error, true, st.evaluations};
            out.verdict = verdict;
            return out;
        }
        // Probe says the integral may settle: spend the rest of the budget.
        converged = adaptive_refine(st, unit.g, opts, opts.max_evaluations, min_width);
        out.verdict = converged ? DivergenceVerdict::Converged : DivergenceVerdict::Stalled;
    }

    if (st.hard_divergence) {
        out.result = {std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity(), true, st.evaluations};
        out.verdict = DivergenceVerdict::Growth;
        return out;
    }

    out.result = {st.total_value, st.total_error, !converged, st.evaluations};
    if (converged) out.verdict = DivergenceVerdict::Converged;
    return out;
}

}  // namespace detail

QuadratureResult integrate(const ScalarFn& f, const SupportSpec& support,
                           QuadratureOptions opts) {
    return detail::integrate_extended(f, support, opts).result;
}

QuadratureResult sum_discrete(const ScalarFn& f, const SupportSpec& support,
                              QuadratureOptions opts) {
    QuadratureResult out;
    if (support.kind == SupportKind::FiniteSet) {
        double abs_sum = 0.0;
        for (double v : support.values) {
            double t = f(v);
            if (!std::isfinite(t)) {
                out.diverged = true;
                out.value = t;
                return out;
            }
            out.value += t;
            abs_sum += std::fabs(t);
            ++out.evaluations;
        }
        out.error_estimate =
            std::numeric_limits<double>::epsilon() * abs_sum * support.values.size();
        out.diverged = out.error_estimate > tolerance_for(opts, out.value);
        return out;
    }
    if (support.kind != SupportKind::Naturals)
        throw ComputationFailed("sum_discrete requires a discrete support");

    // Truncation rule: stop after kRunLength consecutive terms below the
    // mixed tolerance of the running partial sum.
    const int kRunLength = 10;
    int run = 0;
    double run_max = 0.0;
    for (long k = 0; k < opts.max_evaluations; ++k) {
        double t = f(static_cast<double>(k));
        ++out.evaluations;
        if (!std::isfinite(t)) {
            out.diverged = true;
            out.value = t;
            return out;
        }
        out.value += t;
        double threshold = tolerance_for(opts, out.value);
        if (std::fabs(t) < threshold) {
            run_max = std::max(run_max, std::fabs(t));
            if (++run >= kRunLength) {
                out.error_estimate = run_max;
                return out;
            }
        } else {
            run = 0;
            run_max = 0.0;
        }
    }
    out.diverged = true;
    out.error_estimate = std::numeric_limits<double>::infinity();
    return out;
}

QuadratureResult expectation_quadrature(const ScalarFn& f, const SupportSpec& support,
                                        QuadratureOptions opts) {
    return support.is_discrete() ? sum_discrete(f, support, opts)
                                 : integrate(f, support, opts);
}

}  // namespace liprior
