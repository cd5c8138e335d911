#include "script_interp_detail.hpp"

#include <cmath>
#include <sstream>

namespace cadbench::script {

const char* to_string(TestVerdict v) {
    switch (v) {
    case TestVerdict::pass: return "pass";
    case TestVerdict::fail: return "fail";
    default: return "error";
    }
}

TestVerdict test_verdict_from_string(const std::string& s) {
    if (s == "pass") return TestVerdict::pass;
    if (s == "fail") return TestVerdict::fail;
    return TestVerdict::error;
}

namespace detail {

void Context::step(int line, int col) {
    ++steps;
    if (limits.max_steps && steps > limits.max_steps) throw TimeoutSignal{};
    if ((steps & 0x3ff) == 0 && limits.deadline.count() > 0) {
        if (std::chrono::steady_clock::now() - start > limits.deadline) throw TimeoutSignal{};
    }
    (void)line;
    (void)col;
}

void Context::charge(std::uint64_t bytes) {
    alloc_bytes += bytes;
    if (alloc_bytes > limits.max_alloc_bytes) throw ResourceSignal{};
}

std::string type_name(const Value& v) {
    struct Visitor {
        std::string operator()(std::monostate) const { return "null"; }
        std::string operator()(double) const { return "number"; }
        std::string operator()(bool) const { return "bool"; }
        std::string operator()(const std::string&) const { return "string"; }
        std::string operator()(const Vec3&) const { return "vec"; }
        std::string operator()(const CsgNodePtr&) const { return "shape"; }
        std::string operator()(const SelectedEntity&) const { return "entity"; }
        std::string operator()(const ValueList&) const { return "list"; }
        std::string operator()(const ModelRef&) const { return "model"; }
    };
    return std::visit(Visitor{}, v.data);
}

std::string to_display(const Value& v) {
    struct Visitor {
        std::string operator()(std::monostate) const { return "null"; }
        std::string operator()(double d) const {
            std::ostringstream ss;
            ss << d;
            return ss.str();
        }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(const Vec3& p) const {
            std::ostringstream ss;
            ss << "(" << p.x() << ", " << p.y() << ", " << p.z() << ")";
            return ss.str();
        }
        std::string operator()(const CsgNodePtr&) const { return "<shape>"; }
        std::string operator()(const SelectedEntity& e) const {
            if (const auto* f = std::get_if<FaceEntity>(&e)) {
                return std::string("<face ") + cadbench::to_string(f->surface_class) + ">";
            }
            if (const auto* ed = std::get_if<EdgeEntity>(&e)) {
                return std::string("<edge ") + cadbench::to_string(ed->curve_class) + ">";
            }
            return "<vertex>";
        }
        std::string operator()(const ValueList& l) const {
            std::string out = "[";
            for (size_t i = 0; i < l->size(); ++i) {
                if (i) out += ", ";
                out += to_display((*l)[i]);
            }
            return out + "]";
        }
        std::string operator()(const ModelRef&) const { return "<model>"; }
    };
    return std::visit(Visitor{}, v.data);
}

namespace {

bool truthy(const Value& v, const Context& ctx, int line, int col) {
    if (const bool* b = std::get_if<bool>(&v.data)) return *b;
    ctx.fail("expected a bool, got " + type_name(v), line, col);
}

double num(const Value& v, const Context& ctx, int line, int col) {
    if (const double* d = std::get_if<double>(&v.data)) return *d;
    ctx.fail("expected a number, got " + type_name(v), line, col);
}

Value eval(Context& ctx, const Expr& e);

Value eval_binary(Context& ctx, const Expr& e) {
    const std::string& op = e.text;
    if (op == "and" || op == "or") {
        const bool lhs = truthy(eval(ctx, *e.args[0]), ctx, e.line, e.col);
        if (op == "and" && !lhs) return Value(false);
        if (op == "or" && lhs) return Value(true);
        return Value(truthy(eval(ctx, *e.args[1]), ctx, e.line, e.col));
    }
    Value l = eval(ctx, *e.args[0]);
    Value r = eval(ctx, *e.args[1]);
    if (op == "+") {
        if (std::holds_alternative<std::string>(l.data) ||
            std::holds_alternative<std::string>(r.data)) {
            std::string out = to_display(l) + to_display(r);
            ctx.charge(out.size() + 16);
            return Value(std::move(out));
        }
        if (std::holds_alternative<Vec3>(l.data) && std::holds_alternative<Vec3>(r.data)) {
            return Value(Vec3(std::get<Vec3>(l.data) + std::get<Vec3>(r.data)));
        }
        return Value(num(l, ctx, e.line, e.col) + num(r, ctx, e.line, e.col));
    }
    if (op == "-") {
        if (std::holds_alternative<Vec3>(l.data) && std::holds_alternative<Vec3>(r.data)) {
            return Value(Vec3(std::get<Vec3>(l.data) - std::get<Vec3>(r.data)));
        }
        return Value(num(l, ctx, e.line, e.col) - num(r, ctx, e.line, e.col));
    }
    if (op == "*") {
        if (std::holds_alternative<Vec3>(l.data)) {
            return Value(Vec3(std::get<Vec3>(l.data) * num(r, ctx, e.line, e.col)));
        }
        return Value(num(l, ctx, e.line, e.col) * num(r, ctx, e.line, e.col));
    }
    if (op == "/") {
        const double rv = num(r, ctx, e.line, e.col);
        if (rv == 0.0) ctx.fail("division by zero", e.line, e.col);
        if (std::holds_alternative<Vec3>(l.data)) return Value(Vec3(std::get<Vec3>(l.data) / rv));
        return Value(num(l, ctx, e.line, e.col) / rv);
    }
    if (op == "%") {
        const double rv = num(r, ctx, e.line, e.col);
        if (rv == 0.0) ctx.fail("modulo by zero", e.line, e.col);
        return Value(std::fmod(num(l, ctx, e.line, e.col), rv));
    }
    // Comparisons.
    if (op == "==" || op == "!=") {
        bool eq = false;
        if (std::holds_alternative<double>(l.data) && std::holds_alternative<double>(r.data)) {
            eq = std::get<double>(l.data) == std::get<double>(r.data);
        } else if (std::holds_alternative<std::string>(l.data) &&
                   std::holds_alternative<std::string>(r.data)) {
            eq = std::get<std::string>(l.data) == std::get<std::string>(r.data);
        } else if (std::holds_alternative<bool>(l.data) && std::holds_alternative<bool>(r.data)) {
            eq = std::get<bool>(l.data) == std::get<bool>(r.data);
        } else if (std::holds_alternative<Vec3>(l.data) && std::holds_alternative<Vec3>(r.data)) {
            eq = std::get<Vec3>(l.data) == std::get<Vec3>(r.data);
        } else {
            ctx.fail("cannot compare " + type_name(l) + " with " + type_name(r), e.line, e.col);
        }
        return Value(op == "==" ? eq : !eq);
    }
    const double lv = num(l, ctx, e.line, e.col);
    const double rv = num(r, ctx, e.line, e.col);
    if (op == "<") return Value(lv < rv);
    if (op == "<=") return Value(lv <= rv);
    if (op == ">") return Value(lv > rv);
    if (op == ">=") return Value(lv >= rv);
    ctx.fail("unknown operator '" + op + "'", e.line, e.col);
}

Value eval(Context& ctx, const Expr& e) {
    ctx.step(e.line, e.col);
    switch (e.kind) {
    case Expr::Kind::number:
        return Value(e.number);
    case Expr::Kind::string:
        return Value(e.text);
    case Expr::Kind::boolean:
        return Value(e.boolean);
    case Expr::Kind::identifier: {
        auto it = ctx.env.find(e.text);
        if (it == ctx.env.end()) ctx.fail("undefined name '" + e.text + "'", e.line, e.col);
        return it->second;
    }
    case Expr::Kind::binary:
        return eval_binary(ctx, e);
    case Expr::Kind::unary: {
        Value v = eval(ctx, *e.args[0]);
        if (e.text == "-") return Value(-num(v, ctx, e.line, e.col));
        if (e.text == "not") return Value(!truthy(v, ctx, e.line, e.col));
        ctx.fail("unknown unary operator '" + e.text + "'", e.line, e.col);
    }
    case Expr::Kind::list: {
        auto list = std::make_shared<std::vector<Value>>();
        for (const auto& a : e.args) list->push_back(eval(ctx, *a));
        ctx.charge(32 * (list->size() + 1));
        return Value(std::move(list));
    }
    case Expr::Kind::property: {
        Value recv = eval(ctx, *e.args[0]);
        if (const Vec3* v = std::get_if<Vec3>(&recv.data)) {
            if (e.text == "x") return Value(v->x());
            if (e.text == "y") return Value(v->y());
            if (e.text == "z") return Value(v->z());
        }
        ctx.fail("unknown property '." + e.text + "' on " + type_name(recv), e.line, e.col);
    }
    case Expr::Kind::call:
    case Expr::Kind::method: {
        std::vector<Value> args;
        args.reserve(e.args.size());
        for (const auto& a : e.args) args.push_back(eval(ctx, *a));
        return call_builtin(ctx, e.text, args, e.line, e.col);
    }
    }
    ctx.fail("unreachable expression kind", e.line, e.col);
}

void exec_block(Context& ctx, const std::vector<StmtPtr>& stmts);

void exec_stmt(Context& ctx, const Stmt& s) {
    ctx.step(s.line, s.col);
    switch (s.kind) {
    case Stmt::Kind::let:
        ctx.env[s.name] = eval(ctx, *s.value);
        ctx.charge(48);
        break;
    case Stmt::Kind::assign: {
        auto it = ctx.env.find(s.name);
        if (it == ctx.env.end()) {
            ctx.fail("assignment to undefined name '" + s.name + "'", s.line, s.col);
        }
        it->second = eval(ctx, *s.value);
        break;
    }
    case Stmt::Kind::expr:
        eval(ctx, *s.value);
        break;
    case Stmt::Kind::while_loop:
        while (truthy(eval(ctx, *s.value), ctx, s.line, s.col)) {
            exec_block(ctx, s.body);
        }
        break;
    case Stmt::Kind::if_else:
        if (truthy(eval(ctx, *s.value), ctx, s.line, s.col)) {
            exec_block(ctx, s.body);
        } else {
            exec_block(ctx, s.else_body);
        }
        break;
    }
}

void exec_block(Context& ctx, const std::vector<StmtPtr>& stmts) {
    for (const auto& s : stmts) exec_stmt(ctx, *s);
}

std::string format_trace(const std::string& what, const ScriptError& err) {
    std::ostringstream out;
    out << what << ": " << err.message << "\n  at line " << err.line << ", col " << err.col;
    return out.str();
}

}  // namespace

}  // namespace detail

ProgramOutcome run_program(const std::string& source, const InterpLimits& limits) {
    using namespace detail;
    ProgramOutcome out;
    Context ctx;
    ctx.limits = limits;
    ctx.start = std::chrono::steady_clock::now();
    ctx.env["PI"] = Value(M_PI);
    try {
        Program prog = parse(source);
        exec_block(ctx, prog.stmts);
        if (!ctx.has_emitted) {
            out.status = ProgramStatus::runtime_error;
            out.trace = "script error: program finished without emit(shape)";
        } else {
            out.status = ProgramStatus::ok;
            out.model = ctx.emitted;
        }
    } catch (const ParseError& pe) {
        out.status = ProgramStatus::runtime_error;
        out.trace = std::string("parse error: ") + pe.what();
    } catch (const ScriptError& se) {
        out.status = ProgramStatus::runtime_error;
        out.trace = format_trace("script error", se);
    } catch (const TimeoutSignal&) {
        out.status = ProgramStatus::timeout;
    } catch (const ResourceSignal&) {
        out.status = ProgramStatus::resource_limit;
    } catch (const KernelError& ke) {
        out.status = ProgramStatus::runtime_error;
        out.trace = std::string("kernel error: ") + ke.what();
    } catch (const std::bad_alloc&) {
        out.status = ProgramStatus::resource_limit;
    }
    out.logs = std::move(ctx.logs);
    return out;
}

TestOutcome run_test(const std::string& source, const BRepModel& model,
                     const InterpLimits& limits) {
    using namespace detail;
    TestOutcome out;
    Context ctx;
    ctx.test_mode = true;
    ctx.model = std::make_shared<const BRepModel>(model);
    ctx.limits = limits;
    ctx.start = std::chrono::steady_clock::now();
    ctx.env["PI"] = Value(M_PI);
    ctx.env["model"] = Value(ctx.model);
    try {
        Program prog = parse(source);
        exec_block(ctx, prog.stmts);
        out.verdict = TestVerdict::pass;
        if (ctx.checks.empty()) {
            out.message = "passed (no explicit checks)";
        } else {
            std::string msg = "passed " + std::to_string(ctx.checks.size()) + " check(s): ";
            for (size_t i = 0; i < ctx.checks.size(); ++i) {
                if (i) msg += "; ";
                msg += ctx.checks[i];
            }
            out.message = std::move(msg);
        }
    } catch (const ParseError& pe) {
        out.verdict = TestVerdict::error;
        out.message = std::string("parse error: ") + pe.what();
    } catch (const TestFailSignal& tf) {
        out.verdict = TestVerdict::fail;
        out.message = tf.message.empty() ? "check failed" : tf.message;
    } catch (const ScriptError& se) {
        out.verdict = TestVerdict::error;
        out.message = format_trace("script error", se);
    } catch (const TimeoutSignal&) {
        out.verdict = TestVerdict::error;
        out.message = "test timed out";
    } catch (const ResourceSignal&) {
        out.verdict = TestVerdict::error;
        out.message = "test exceeded the memory budget";
    } catch (const KernelError& ke) {
        out.verdict = TestVerdict::error;
        out.message = std::string("kernel error: ") + ke.what();
    } catch (const std::bad_alloc&) {
        out.verdict = TestVerdict::error;
        out.message = "test exceeded available memory";
    }
    out.logs = std::move(ctx.logs);
    return out;
}

}  // namespace cadbench::script
