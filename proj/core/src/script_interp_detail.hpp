#pragma once

#include "cadbench/interp.hpp"
#include "cadbench/selectors.hpp"

#include <map>
#include <memory>
#include <variant>

namespace cadbench::script::detail {

struct Value;
using ValueList = std::shared_ptr<std::vector<Value>>;

using ModelRef = std::shared_ptr<const BRepModel>;

struct Value {
    std::variant<std::monostate, double, bool, std::string, Vec3, CsgNodePtr, SelectedEntity,
                 ValueList, ModelRef>
        data;

    Value() = default;
    template <typename T>
        requires(!std::is_same_v<std::decay_t<T>, Value>)
    explicit Value(T&& v) : data(std::forward<T>(v)) {}
};

struct ScriptError {
    std::string message;
    int line = 0, col = 0;
};

struct TimeoutSignal {};
struct ResourceSignal {};
struct TestFailSignal {
    std::string message;
};

struct Context {
    bool test_mode = false;
    ModelRef model;
    std::map<std::string, Value> env;
    std::vector<std::string> logs;
    std::vector<std::string> checks;
    BRepModel emitted;
    bool has_emitted = false;

    InterpLimits limits;
    std::chrono::steady_clock::time_point start;
    std::uint64_t steps = 0;
    std::uint64_t alloc_bytes = 0;

    void step(int line, int col);
    void charge(std::uint64_t bytes);
    [[noreturn]] void fail(const std::string& msg, int line, int col) const {
        throw ScriptError{msg, line, col};
    }
};

std::string type_name(const Value& v);
std::string to_display(const Value& v);

/// Dispatches a builtin call; throws ScriptError for unknown names.
Value call_builtin(Context& ctx, const std::string& name, std::vector<Value>& args, int line,
                   int col);

}  // namespace cadbench::script::detail
