#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace liprior {

enum class ExprKind { Constant, Variable, Unary, Binary, Call };
enum class UnaryOp { Neg };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree for log-densities and conservation laws.
// Allowed functions: log, exp, sqrt, pow, abs, lgamma.
class Expr {
  public:
    static ExprPtr constant(double value);
    // slot < 0 means "resolve by name at evaluation time"; the parser assigns
    // slots (parameters first, observable last) so model evaluations can bind
    // by position.
    static ExprPtr variable(std::string name, int slot = -1);
    static ExprPtr unary(UnaryOp op, ExprPtr operand);
    static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
    static ExprPtr call(const std::string& function, std::vector<ExprPtr> args);

    static bool is_known_function(const std::string& name);
    static int function_arity(const std::string& name);

    ExprKind kind() const { return kind_; }
    double value() const { return value_; }
    const std::string& name() const { return name_; }
    int slot() const { return slot_; }
    UnaryOp unary_op() const { return unary_op_; }
    BinaryOp binary_op() const { return binary_op_; }
    const std::vector<ExprPtr>& children() const { return children_; }

    // Evaluation signals DomainError on invalid arguments (log/sqrt of a
    // nonpositive/negative number, division by zero, non-integer powers of
    // negatives) and on overflow: a finite result or a thrown error, never a
    // silent NaN/inf.
    double eval(const std::map<std::string, double>& bindings) const;
    double eval(std::span<const double> slot_values) const;

    void collect_free_variables(std::set<std::string>& out) const;
    std::set<std::string> free_variables() const;
    bool depends_on(const std::string& variable) const;

    bool equals(const Expr& other) const;

    // Canonical print; reparsing the output of a parsed expression yields an
    // identical tree.
    std::string to_string() const;

  private:
    Expr() = default;

    ExprKind kind_ = ExprKind::Constant;
    double value_ = 0.0;
    std::string name_;
    int slot_ = -1;
    UnaryOp unary_op_ = UnaryOp::Neg;
    BinaryOp binary_op_ = BinaryOp::Add;
    std::vector<ExprPtr> children_;
};

// Shortest round-trip decimal form of a double (to_chars based).
std::string format_double(double v);

}  // namespace liprior
