#include "cadbench/script.hpp"

#include <cstdio>
#include <sstream>

namespace cadbench::script {

namespace {

std::string fmt_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else {
            out += c;
        }
    }
    return out;
}

void print_expr(const Expr& e, std::ostringstream& out) {
    switch (e.kind) {
    case Expr::Kind::number:
        out << fmt_number(e.number);
        break;
    case Expr::Kind::string:
        out << '"' << escape(e.text) << '"';
        break;
    case Expr::Kind::boolean:
        out << (e.boolean ? "true" : "false");
        break;
    case Expr::Kind::identifier:
        out << e.text;
        break;
    case Expr::Kind::call: {
        out << e.text << "(";
        for (size_t i = 0; i < e.args.size(); ++i) {
            if (i) out << ", ";
            print_expr(*e.args[i], out);
        }
        out << ")";
        break;
    }
    case Expr::Kind::method: {
        print_expr(*e.args[0], out);
        out << "." << e.text << "(";
        for (size_t i = 1; i < e.args.size(); ++i) {
            if (i > 1) out << ", ";
            print_expr(*e.args[i], out);
        }
        out << ")";
        break;
    }
    case Expr::Kind::property:
        print_expr(*e.args[0], out);
        out << "." << e.text;
        break;
    case Expr::Kind::binary: {
        out << "(";
        print_expr(*e.args[0], out);
        out << " " << e.text << " ";
        print_expr(*e.args[1], out);
        out << ")";
        break;
    }
    case Expr::Kind::unary:
        out << e.text << (e.text == "not" ? " " : "");
        if (e.args[0]->kind == Expr::Kind::binary) {
            out << "(";
            print_expr(*e.args[0], out);
            out << ")";
        } else {
            print_expr(*e.args[0], out);
        }
        break;
    case Expr::Kind::list: {
        out << "[";
        for (size_t i = 0; i < e.args.size(); ++i) {
            if (i) out << ", ";
            print_expr(*e.args[i], out);
        }
        out << "]";
        break;
    }
    }
}

void print_stmt(const Stmt& s, std::ostringstream& out, int indent) {
    const std::string pad(indent * 2, ' ');
    switch (s.kind) {
    case Stmt::Kind::let:
        out << pad << "let " << s.name << " = ";
        print_expr(*s.value, out);
        out << "\n";
        break;
    case Stmt::Kind::assign:
        out << pad << "set " << s.name << " = ";
        print_expr(*s.value, out);
        out << "\n";
        break;
    case Stmt::Kind::expr:
        out << pad;
        print_expr(*s.value, out);
        out << "\n";
        break;
    case Stmt::Kind::while_loop:
        out << pad << "while ";
        print_expr(*s.value, out);
        out << " {\n";
        for (const auto& b : s.body) print_stmt(*b, out, indent + 1);
        out << pad << "}\n";
        break;
    case Stmt::Kind::if_else:
        out << pad << "if ";
        print_expr(*s.value, out);
        out << " {\n";
        for (const auto& b : s.body) print_stmt(*b, out, indent + 1);
        out << pad << "}";
        if (!s.else_body.empty()) {
            out << " else {\n";
            for (const auto& b : s.else_body) print_stmt(*b, out, indent + 1);
            out << pad << "}";
        }
        out << "\n";
        break;
    }
}

}  // namespace

std::string print(const Program& program) {
    std::ostringstream out;
    for (const auto& s : program.stmts) print_stmt(*s, out, 0);
    return out.str();
}

std::string print(const Expr& expr) {
    std::ostringstream out;
    print_expr(expr, out);
    return out.str();
}

ExprPtr clone(const ExprPtr& e) {
    if (!e) return nullptr;
    auto out = std::make_shared<Expr>(*e);
    out->args.clear();
    for (const auto& a : e->args) out->args.push_back(clone(a));
    return out;
}

StmtPtr clone(const StmtPtr& s) {
    if (!s) return nullptr;
    auto out = std::make_shared<Stmt>();
    out->kind = s->kind;
    out->name = s->name;
    out->line = s->line;
    out->col = s->col;
    out->value = clone(s->value);
    for (const auto& b : s->body) out->body.push_back(clone(b));
    for (const auto& b : s->else_body) out->else_body.push_back(clone(b));
    return out;
}

Program clone(const Program& p) {
    Program out;
    for (const auto& s : p.stmts) out.stmts.push_back(clone(s));
    return out;
}

namespace {

void visit_expr_tree(ExprPtr& e, const std::function<void(ExprPtr&)>& fn) {
    if (!e) return;
    fn(e);
    for (auto& a : e->args) visit_expr_tree(a, fn);
}

void visit_stmt(StmtPtr& s, const std::function<void(ExprPtr&)>& fn) {
    if (!s) return;
    if (s->value) visit_expr_tree(s->value, fn);
    for (auto& b : s->body) visit_stmt(b, fn);
    for (auto& b : s->else_body) visit_stmt(b, fn);
}

}  // namespace

void visit_exprs(Program& p, const std::function<void(ExprPtr&)>& fn) {
    for (auto& s : p.stmts) visit_stmt(s, fn);
}

}  // namespace cadbench::script
