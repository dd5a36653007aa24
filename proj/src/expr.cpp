#include "liprior/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "liprior/errors.hpp"

namespace liprior {

namespace {

struct FunctionInfo {
    const char* name;
    int arity;
};

constexpr FunctionInfo kFunctions[] = {
    {"log", 1}, {"exp", 1}, {"sqrt", 1}, {"abs", 1}, {"pow", 2}, {"lgamma", 1},
};

const FunctionInfo* find_function(const std::string& name) {
    for (const auto& f : kFunctions)
        if (name == f.name) return &f;
    return nullptr;
}

[[noreturn]] void domain_error(const std::string& what) { throw DomainError(what); }

double checked_finite(double v, const char* context) {
    if (!std::isfinite(v))
        domain_error(std::string("non-finite result in ") + context);
    return v;
}

double apply_call(const std::string& fn, const double* args) {
    if (fn == "log") {
        if (args[0] <= 0.0) domain_error("log of a nonpositive number");
        return checked_finite(std::log(args[0]), "log");
    }
    if (fn == "exp") return checked_finite(std::exp(args[0]), "exp");
    if (fn == "sqrt") {
        if (args[0] < 0.0) domain_error("sqrt of a negative number");
        return std::sqrt(args[0]);
    }
    if (fn == "abs") return std::fabs(args[0]);
    if (fn == "lgamma") {
        if (args[0] <= 0.0 && args[0] == std::floor(args[0]))
            domain_error("lgamma pole at nonpositive integer");
        return checked_finite(std::lgamma(args[0]), "lgamma");
    }
    // pow
    if (args[0] < 0.0 && args[1] != std::floor(args[1]))
        domain_error("non-integer power of a negative base");
    if (args[0] == 0.0 && args[1] < 0.0) domain_error("zero raised to a negative power");
    return checked_finite(std::pow(args[0], args[1]), "pow");
}

double apply_binary(BinaryOp op, double a, double b) {
    switch (op) {
        case BinaryOp::Add: return checked_finite(a + b, "+");
        case BinaryOp::Sub: return checked_finite(a - b, "-");
        case BinaryOp::Mul: return checked_finite(a * b, "*");
        case BinaryOp::Div:
            if (b == 0.0) domain_error("division by zero");
            return checked_finite(a / b, "/");
        case BinaryOp::Pow: {
            double args[2] = {a, b};
            return apply_call("pow", args);
        }
    }
    domain_error("unknown binary operator");
}

// Precedence levels for printing: higher binds tighter.
int precedence(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
    }
    return 0;
}

constexpr int kNegPrecedence = 3;  // binds tighter than * and /, looser than ^

}  // namespace

ExprPtr Expr::constant(double value) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->kind_ = ExprKind::Constant;
    e->value_ = value;
    return e;
}

ExprPtr Expr::variable(std::string name, int slot) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->kind_ = ExprKind::Variable;
    e->name_ = std::move(name);
    e->slot_ = slot;
    return e;
}

ExprPtr Expr::unary(UnaryOp op, ExprPtr operand) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->kind_ = ExprKind::Unary;
    e->unary_op_ = op;
    e->children_.push_back(std::move(operand));
    return e;
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::shared_ptr<Expr>(new Expr());
    e->kind_ = ExprKind::Binary;
    e->binary_op_ = op;
    e->children_.push_back(std::move(lhs));
    e->children_.push_back(std::move(rhs));
    return e;
}

ExprPtr Expr::call(const std::string& function, std::vector<ExprPtr> args) {
    const FunctionInfo* info = find_function(function);
    if (!info) throw UnknownFunction("unknown function '" + function + "'");
    if (static_cast<int>(args.size()) != info->arity)
        throw UnknownFunction("function '" + function + "' expects " +
                              std::to_string(info->arity) + " argument(s)");
    auto e = std::shared_ptr<Expr>(new Expr());
    e->kind_ = ExprKind::Call;
    e->name_ = function;
    e->children_ = std::move(args);
    return e;
}

bool Expr::is_known_function(const std::string& name) { return find_function(name) != nullptr; }

int Expr::function_arity(const std::string& name) {
    const FunctionInfo* info = find_function(name);
    return info ? info->arity : -1;
}

namespace {

template <class Lookup>
double eval_impl(const Expr& e, const Lookup& lookup) {
    switch (e.kind()) {
        case ExprKind::Constant: return e.value();
        case ExprKind::Variable: return lookup(e);
        case ExprKind::Unary: return -eval_impl(*e.children()[0], lookup);
        case ExprKind::Binary:
            return apply_binary(e.binary_op(), eval_impl(*e.children()[0], lookup),
                                eval_impl(*e.children()[1], lookup));
        case ExprKind::Call: {
            double args[2] = {0.0, 0.0};
            for (size_t i = 0; i < e.children().size(); ++i)
                args[i] = eval_impl(*e.children()[i], lookup);
            return apply_call(e.name(), args);
        }
    }
    domain_error("corrupt expression node");
}

}  // namespace

double Expr::eval(const std::map<std::string, double>& bindings) const {
    return eval_impl(*this, [&](const Expr& v) {
        auto it = bindings.find(v.name());
        if (it == bindings.end())
            throw UnboundVariable("unbound variable '" + v.name() + "'");
        return it->second;
    });
}

double Expr::eval(std::span<const double> slot_values) const {
    return eval_impl(*this, [&](const Expr& v) {
        if (v.slot() < 0 || v.slot() >= static_cast<int>(slot_values.size()))
            throw UnboundVariable("variable '" + v.name() + "' has no evaluation slot");
        return slot_values[v.slot()];
    });
}

void Expr::collect_free_variables(std::set<std::string>& out) const {
    if (kind_ == ExprKind::Variable) {
        out.insert(name_);
        return;
    }
    for (const auto& c : children_) c->collect_free_variables(out);
}

std::set<std::string> Expr::free_variables() const {
    std::set<std::string> out;
    collect_free_variables(out);
    return out;
}

bool Expr::depends_on(const std::string& variable) const {
    if (kind_ == ExprKind::Variable) return name_ == variable;
    for (const auto& c : children_)
        if (c->depends_on(variable)) return true;
    return false;
}

bool Expr::equals(const Expr& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case ExprKind::Constant: return value_ == other.value_;
        case ExprKind::Variable: return name_ == other.name_;
        case ExprKind::Unary:
            if (unary_op_ != other.unary_op_) return false;
            break;
        case ExprKind::Binary:
            if (binary_op_ != other.binary_op_) return false;
            break;
        case ExprKind::Call:
            if (name_ != other.name_) return false;
            break;
    }
    if (children_.size() != other.children_.size()) return false;
    for (size_t i = 0; i < children_.size(); ++i)
        if (!children_[i]->equals(*other.children_[i])) return false;
    return true;
}

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

const char* op_token(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return " + ";
        case BinaryOp::Sub: return " - ";
        case BinaryOp::Mul: return " * ";
        case BinaryOp::Div: return " / ";
        case BinaryOp::Pow: return " ^ ";
    }
    return " ? ";
}

// min_prec is the lowest precedence the surrounding context accepts without
// parentheses.
void print_expr(const Expr& e, std::string& out, int min_prec) {
    switch (e.kind()) {
        case ExprKind::Constant: {
            double v = e.value();
            if (v < 0.0 || std::signbit(v)) {
                // Negative literals print as a unary minus so reparsing stays
                // within the unsigned-number lexer.
                bool parens = kNegPrecedence < min_prec;
                if (parens) out += '(';
                out += '-';
                out += format_double(-v);
                if (parens) out += ')';
            } else {
                out += format_double(v);
            }
            return;
        }
        case ExprKind::Variable: out += e.name(); return;
        case ExprKind::Unary: {
            bool parens = kNegPrecedence < min_prec;
            if (parens) out += '(';
            out += '-';
            print_expr(*e.children()[0], out, kNegPrecedence);
            if (parens) out += ')';
            return;
        }
        case ExprKind::Binary: {
            int prec = precedence(e.binary_op());
            bool parens = prec < min_prec;
            if (parens) out += '(';
            bool right_assoc = e.binary_op() == BinaryOp::Pow;
            print_expr(*e.children()[0], out, right_assoc ? prec + 1 : prec);
            out += op_token(e.binary_op());
            print_expr(*e.children()[1], out, right_assoc ? prec : prec + 1);
            if (parens) out += ')';
            return;
        }
        case ExprKind::Call: {
            out += e.name();
            out += '(';
            for (size_t i = 0; i < e.children().size(); ++i) {
                if (i) out += ", ";
                print_expr(*e.children()[i], out, 0);
            }
            out += ')';
            return;
        }
    }
}

}  // namespace

std::string Expr::to_string() const {
    std::string out;
    print_expr(*this, out, 0);
    return out;
}

}  // namespace liprior
