#include "cadbench/script.hpp"

#include "script_lexer.hpp"

namespace cadbench::script {

namespace {

struct ParserState {
    std::vector<Token> toks;
    size_t pos = 0;

    const Token& peek() const { return toks[pos]; }
    const Token& get() { return toks[pos++]; }
    bool at_op(const char* op) const {
        return peek().kind == Token::Kind::op && peek().text == op;
    }
    bool at_kw(const char* kw) const {
        return peek().kind == Token::Kind::identifier && peek().text == kw;
    }
    bool eat_op(const char* op) {
        if (at_op(op)) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect_op(const char* op) {
        if (!eat_op(op)) {
            throw ParseError(std::string("expected '") + op + "', got '" + peek().text + "'",
                             peek().line, peek().col);
        }
    }

    ExprPtr make(Expr::Kind kind, const Token& at) {
        auto e = std::make_shared<Expr>();
        e->kind = kind;
        e->line = at.line;
        e->col = at.col;
        return e;
    }

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (at_kw("or")) {
            const Token t = get();
            auto e = make(Expr::Kind::binary, t);
            e->text = "or";
            e->args = {lhs, parse_and()};
            lhs = e;
        }
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_not();
        while (at_kw("and")) {
            const Token t = get();
            auto e = make(Expr::Kind::binary, t);
            e->text = "and";
            e->args = {lhs, parse_not()};
            lhs = e;
        }
        return lhs;
    }

    ExprPtr parse_not() {
        if (at_kw("not")) {
            const Token t = get();
            auto e = make(Expr::Kind::unary, t);
            e->text = "not";
            e->args = {parse_not()};
            return e;
        }
        return parse_cmp();
    }

    ExprPtr parse_cmp() {
        ExprPtr lhs = parse_add();
        static const char* cmps[] = {"==", "!=", "<=", ">=", "<", ">"};
        for (const char* op : cmps) {
            if (at_op(op)) {
                const Token t = get();
                auto e = make(Expr::Kind::binary, t);
                e->text = op;
                e->args = {lhs, parse_add()};
                return e;
            }
        }
        return lhs;
    }

    ExprPtr parse_add() {
        ExprPtr lhs = parse_mul();
        while (at_op("+") || at_op("-")) {
            const Token t = get();
            auto e = make(Expr::Kind::binary, t);
            e->text = t.text;
            e->args = {lhs, parse_mul()};
            lhs = e;
        }
        return lhs;
    }

    ExprPtr parse_mul() {
        ExprPtr lhs = parse_unary();
        while (at_op("*") || at_op("/") || at_op("%")) {
            const Token t = get();
            auto e = make(Expr::Kind::binary, t);
            e->text = t.text;
            e->args = {lhs, parse_unary()};
            lhs = e;
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (at_op("-")) {
            const Token t = get();
            auto e = make(Expr::Kind::unary, t);
            e->text = "-";
            e->args = {parse_unary()};
            return e;
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (at_op(".")) {
            const Token dot = get();
            if (peek().kind != Token::Kind::identifier) {
                throw ParseError("expected member name after '.'", peek().line, peek().col);
            }
            const Token name = get();
            if (eat_op("(")) {
                auto m = make(Expr::Kind::method, dot);
                m->text = name.text;
                m->args.push_back(e);
                if (!at_op(")")) {
                    do {
                        m->args.push_back(parse_expr());
                    } while (eat_op(","));
                }
                expect_op(")");
                e = m;
            } else {
                auto p = make(Expr::Kind::property, dot);
                p->text = name.text;
                p->args.push_back(e);
                e = p;
            }
        }
        return e;
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        if (t.kind == Token::Kind::number) {
            const Token tok = get();
            auto e = make(Expr::Kind::number, tok);
            e->number = tok.number;
            return e;
        }
        if (t.kind == Token::Kind::string) {
            const Token tok = get();
            auto e = make(Expr::Kind::string, tok);
            e->text = tok.text;
            return e;
        }
        if (t.kind == Token::Kind::identifier) {
            if (t.text == "true" || t.text == "false") {
                const Token tok = get();
                auto e = make(Expr::Kind::boolean, tok);
                e->boolean = tok.text == "true";
                return e;
            }
            const Token tok = get();
            if (eat_op("(")) {
                auto e = make(Expr::Kind::call, tok);
                e->text = tok.text;
                if (!at_op(")")) {
                    do {
                        e->args.push_back(parse_expr());
                    } while (eat_op(","));
                }
                expect_op(")");
                return e;
            }
            auto e = make(Expr::Kind::identifier, tok);
            e->text = tok.text;
            return e;
        }
        if (at_op("(")) {
            get();
            ExprPtr e = parse_expr();
            expect_op(")");
            return e;
        }
        if (at_op("[")) {
            const Token tok = get();
            auto e = make(Expr::Kind::list, tok);
            if (!at_op("]")) {
                do {
                    e->args.push_back(parse_expr());
                } while (eat_op(","));
            }
            expect_op("]");
            return e;
        }
        throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    }

    std::vector<StmtPtr> parse_block() {
        expect_op("{");
        std::vector<StmtPtr> body;
        while (!at_op("}")) {
            if (peek().kind == Token::Kind::eof) {
                throw ParseError("unterminated block", peek().line, peek().col);
            }
            body.push_back(parse_stmt());
        }
        expect_op("}");
        return body;
    }

    StmtPtr parse_stmt() {
        const Token& t = peek();
        auto s = std::make_shared<Stmt>();
        s->line = t.line;
        s->col = t.col;
        if (at_kw("let") || at_kw("set")) {
            const bool is_let = t.text == "let";
            get();
            if (peek().kind != Token::Kind::identifier) {
                throw ParseError("expected name after let/set", peek().line, peek().col);
            }
            s->kind = is_let ? Stmt::Kind::let : Stmt::Kind::assign;
            s->name = get().text;
            expect_op("=");
            s->value = parse_expr();
            return s;
        }
        if (at_kw("while")) {
            get();
            s->kind = Stmt::Kind::while_loop;
            s->value = parse_expr();
            s->body = parse_block();
            return s;
        }
        if (at_kw("if")) {
            get();
            s->kind = Stmt::Kind::if_else;
            s->value = parse_expr();
            s->body = parse_block();
            if (at_kw("else")) {
                get();
                s->else_body = parse_block();
            }
            return s;
        }
        s->kind = Stmt::Kind::expr;
        s->value = parse_expr();
        return s;
    }
};

}  // namespace

Program parse(const std::string& source) {
    ParserState ps{lex(source)};
    Program prog;
    while (ps.peek().kind != Token::Kind::eof) {
        prog.stmts.push_back(ps.parse_stmt());
    }
    return prog;
}

}  // namespace cadbench::script
