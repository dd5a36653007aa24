#include "liprior/decompose.hpp"

#include <cmath>
#include <random>

#include "liprior/errors.hpp"

namespace liprior {

namespace {

struct SignedTerm {
    int sign;
    ExprPtr expr;
};

void flatten_sum(const ExprPtr& e, int sign, std::vector<SignedTerm>& out) {
    if (e->kind() == ExprKind::Binary) {
        if (e->binary_op() == BinaryOp::Add) {
            flatten_sum(e->children()[0], sign, out);
            flatten_sum(e->children()[1], sign, out);
            return;
        }
        if (e->binary_op() == BinaryOp::Sub) {
            flatten_sum(e->children()[0], sign, out);
            flatten_sum(e->children()[1], -sign, out);
            return;
        }
    }
    if (e->kind() == ExprKind::Unary) {
        flatten_sum(e->children()[0], -sign, out);
        return;
    }
    out.push_back({sign, e});
}

struct Factor {
    ExprPtr expr;
    bool inverted;  // appears in a denominator
};

void flatten_product(const ExprPtr& e, bool inverted, int& sign, double& coeff,
                     std::vector<Factor>& out) {
    if (e->kind() == ExprKind::Constant) {
        double v = e->value();
        if (inverted) {
            if (v == 0.0) throw DomainError("division by zero constant in log-density");
            coeff /= v;
        } else {
            coeff *= v;
        }
        return;
    }
    if (e->kind() == ExprKind::Unary) {
        sign = -sign;
        flatten_product(e->children()[0], inverted, sign, coeff, out);
        return;
    }
    if (e->kind() == ExprKind::Binary) {
        if (e->binary_op() == BinaryOp::Mul) {
            flatten_product(e->children()[0], inverted, sign, coeff, out);
            flatten_product(e->children()[1], inverted, sign, coeff, out);
            return;
        }
        if (e->binary_op() == BinaryOp::Div) {
            flatten_product(e->children()[0], inverted, sign, coeff, out);
            flatten_product(e->children()[1], !inverted, sign, coeff, out);
            return;
        }
    }
    out.push_back({e, inverted});
}

ExprPtr as_expr(const Factor& f) {
    return f.inverted ? Expr::binary(BinaryOp::Div, Expr::constant(1.0), f.expr) : f.expr;
}

ExprPtr product_of(const std::vector<Factor>& factors) {
    ExprPtr out;
    for (const auto& f : factors)
        out = out ? Expr::binary(BinaryOp::Mul, out, as_expr(f)) : as_expr(f);
    return out;
}

ExprPtr apply_coefficient(ExprPtr chain, int sign, double coeff) {
    double c = sign * coeff;
    if (!chain) return Expr::constant(c);
    if (c == 1.0) return chain;
    if (c == -1.0) return Expr::unary(UnaryOp::Neg, chain);
    return Expr::binary(BinaryOp::Mul, Expr::constant(c), chain);
}

bool depends_on_any(const Expr& e, const std::vector<ParamDecl>& params) {
    for (const auto& p : params)
        if (e.depends_on(p.name)) return true;
    return false;
}

// Deterministic probe point inside a support, used by the fidelity check.
double draw_in_support(const SupportSpec& s, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.02, 0.98);
    switch (s.kind) {
        case SupportKind::FiniteSet: {
            std::uniform_int_distribution<size_t> pick(0, s.values.size() - 1);
            return s.values[pick(rng)];
        }
        case SupportKind::Naturals: {
            std::uniform_int_distribution<int> pick(0, 30);
            return pick(rng);
        }
        case SupportKind::Interval: {
            double t = unit(rng);
            bool lo_inf = std::isinf(s.lo), hi_inf = std::isinf(s.hi);
            if (!lo_inf && !hi_inf) return s.lo + t * (s.hi - s.lo);
            if (lo_inf && hi_inf) {
                double u = 2.0 * t - 1.0;
                return u / (1.0 - u * u);
            }
            if (!lo_inf) return s.lo + t / (1.0 - t);
            return s.hi - t / (1.0 - t);
        }
    }
    return 0.0;
}

}  // namespace

SeparableDecomposition decompose_log_density(const ModelSpec& m) {
    std::vector<SignedTerm> terms;
    flatten_sum(m.logpdf, 1, terms);

    SeparableDecomposition out;
    for (const auto& term : terms) {
        bool uses_x = term.expr->depends_on(m.obs.name);
        bool uses_theta = depends_on_any(*term.expr, m.params);
        ExprPtr signed_expr = term.sign == 1
                                  ? term.expr
                                  : Expr::unary(UnaryOp::Neg, term.expr);
        if (!uses_theta) {
            out.x_terms.push_back(signed_expr);
            continue;
        }
        if (!uses_x) {
            out.theta_terms.push_back(signed_expr);
            continue;
        }

        int sign = term.sign;
        double coeff = 1.0;
        std::vector<Factor> factors;
        flatten_product(term.expr, false, sign, coeff, factors);

        std::vector<Factor> theta_factors, x_factors;
        for (const auto& f : factors) {
            bool fx = f.expr->depends_on(m.obs.name);
            bool ft = depends_on_any(*f.expr, m.params);
            if (fx && ft)
                throw NotSeparable(
                    "term '" + term.expr->to_string() + "' mixes '" + m.obs.name +
                    "' and a parameter non-multiplicatively; rewrite the log-density "
                    "as a top-level sum of observable-only terms, parameter-only "
                    "terms, and (parameter factor) * (observable factor) products");
            if (fx)
                x_factors.push_back(f);
            else
                theta_factors.push_back(f);  // variable-free factors join the theta side
        }
        MixedTerm mt;
        mt.theta_factor = apply_coefficient(product_of(theta_factors), sign, coeff);
        mt.data_factor = product_of(x_factors);
        out.mixed.push_back(std::move(mt));
    }

    // Fidelity check: the classified pieces must reproduce the log-density.
    std::mt19937_64 rng(0x5eedULL);
    std::vector<double> slots(m.params.size() + 1);
    for (int probe = 0; probe < 100; ++probe) {
        for (size_t i = 0; i < m.params.size(); ++i)
            slots[i] = draw_in_support(m.params[i].support, rng);
        slots[m.params.size()] = draw_in_support(m.obs.support, rng);

        double reference = m.logpdf->eval(slots);
        double sum = 0.0;
        for (const auto& e : out.x_terms) sum += e->eval(slots);
        for (const auto& e : out.theta_terms) sum += e->eval(slots);
        for (const auto& mt : out.mixed)
            sum += mt.theta_factor->eval(slots) * mt.data_factor->eval(slots);
        if (std::fabs(sum - reference) > 1e-10)
            throw ComputationFailed("separable decomposition failed the pointwise "
                                    "fidelity check (internal error)");
    }
    return out;
}

}  // namespace liprior
