#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cadbench::script {

/// The registered dialect identifier of the harness modeling language.
inline constexpr const char* kDialectId = "cadscript/1";

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", col " +
                             std::to_string(col) + ")"),
          line(line),
          col(col) {}
    int line, col;
};

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
    enum class Kind { number, string, boolean, identifier, call, method, property, binary, unary, list };
    Kind kind = Kind::number;
    double number = 0.0;
    bool boolean = false;
    std::string text;            // identifier / callee / operator / property name
    std::vector<ExprPtr> args;   // call args; method: args[0] = receiver; binary: {lhs, rhs};
                                 // unary: {operand}; property: {receiver}; list: elements
    int line = 0, col = 0;
};

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;

struct Stmt {
    enum class Kind { let, assign, expr, while_loop, if_else };
    Kind kind = Kind::expr;
    std::string name;            // let/assign target
    ExprPtr value;               // let/assign value, expr, loop/if condition
    std::vector<StmtPtr> body;
    std::vector<StmtPtr> else_body;
    int line = 0, col = 0;
};

struct Program {
    std::vector<StmtPtr> stmts;
};

Program parse(const std::string& source);

/// Canonical source form; parse(print(p)) is structurally identical to p.
std::string print(const Program& program);
std::string print(const Expr& expr);

/// Deep copies for AST rewriting.
ExprPtr clone(const ExprPtr& e);
StmtPtr clone(const StmtPtr& s);
Program clone(const Program& p);

/// Visits every expression node in evaluation order (pre-order, statements in
/// program order). Used by the mutation operators.
void visit_exprs(Program& p, const std::function<void(ExprPtr&)>& fn);

}  // namespace cadbench::script
