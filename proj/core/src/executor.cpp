#include "cadbench/executor.hpp"

#include "cadbench/step_io.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstring>
#include <semaphore>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace cadbench {

using json = nlohmann::ordered_json;

const char* to_string(ExecStatus s) {
    switch (s) {
    case ExecStatus::ok: return "ok";
    case ExecStatus::runtime_error: return "runtime-error";
    case ExecStatus::timeout: return "timeout";
    default: return "resource-limit";
    }
}

ExecStatus exec_status_from_string(const std::string& s) {
    if (s == "ok") return ExecStatus::ok;
    if (s == "timeout") return ExecStatus::timeout;
    if (s == "resource-limit") return ExecStatus::resource_limit;
    return ExecStatus::runtime_error;
}

std::string resolve_worker_path(const std::string& configured) {
    if (!configured.empty()) return configured;
    if (const char* env = std::getenv("CADBENCH_WORKER"); env != nullptr && *env != '\0') {
        return env;
    }
    std::error_code ec;
    const auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec) {
        const auto sibling = self.parent_path() / "cadbench-worker";
        if (std::filesystem::exists(sibling, ec)) return sibling.string();
    }
    return "cadbench-worker";  // rely on PATH
}

namespace {

struct ExchangeOutcome {
    bool timed_out = false;
    bool got_response = false;
    std::string response;
    int exit_signal = 0;
    int exit_code = 0;
};

/// Spawns the worker, writes one request line, reads one response line with a
/// wall-clock deadline, SIGKILLs on expiry.
ExchangeOutcome exchange(const std::string& worker, const std::string& request,
                         std::int64_t deadline_ms) {
    int in_pipe[2];   // parent → child stdin
    int out_pipe[2];  // child stdout → parent
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
        throw ExecutorError("failed to create worker pipes");
    }
    const pid_t pid = fork();
    if (pid < 0) throw ExecutorError("failed to fork worker");
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl(worker.c_str(), worker.c_str(), static_cast<char*>(nullptr));
        std::fprintf(stderr, "exec failed: %s\n", worker.c_str());
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);

    ExchangeOutcome out;
    {
        const std::string line = request + "\n";
        size_t off = 0;
        while (off < line.size()) {
            const ssize_t n = write(in_pipe[1], line.data() + off, line.size() - off);
            if (n <= 0) break;
            off += size_t(n);
        }
    }
    close(in_pipe[1]);

    const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(deadline_ms);
    std::string buf;
    char chunk[4096];
    bool done = false;
    while (!done) {
        const auto now = std::chrono::steady_clock::now();
        if (now >= deadline) {
            out.timed_out = true;
            kill(pid, SIGKILL);
            break;
        }
        const auto left =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
        pollfd pfd{out_pipe[0], POLLIN, 0};
        const int pr = poll(&pfd, 1, int(std::min<std::int64_t>(left, 50)));
        if (pr < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (pr == 0) continue;
        const ssize_t n = read(out_pipe[0], chunk, sizeof chunk);
        if (n <= 0) break;  // EOF: child exited
        buf.append(chunk, size_t(n));
        if (buf.find('\n') != std::string::npos) done = true;
    }
    close(out_pipe[0]);

    int status = 0;
    waitpid(pid, &status, 0);
    if (WIFSIGNALED(status)) out.exit_signal = WTERMSIG(status);
    if (WIFEXITED(status)) out.exit_code = WEXITSTATUS(status);

    const size_t nl = buf.find('\n');
    if (nl != std::string::npos) {
        out.got_response = true;
        out.response = buf.substr(0, nl);
    }
    return out;
}

std::atomic<std::uint64_t> g_scratch_counter{0};

void ignore_sigpipe_once() {
    static const bool done = [] {
        std::signal(SIGPIPE, SIG_IGN);
        return true;
    }();
    (void)done;
}

}  // namespace

struct Executor::Impl {
    std::counting_semaphore<4096> slots;
    std::string worker;
    std::filesystem::path scratch;

    explicit Impl(int n, std::string w, std::filesystem::path s)
        : slots(n), worker(std::move(w)), scratch(std::move(s)) {}

    struct Slot {
        std::counting_semaphore<4096>& sem;
        explicit Slot(std::counting_semaphore<4096>& s) : sem(s) { sem.acquire(); }
        ~Slot() { sem.release(); }
    };

    std::filesystem::path scratch_file(const char* tag) const {
        const auto n = g_scratch_counter.fetch_add(1);
        return scratch / ("cadbench-" + std::to_string(getpid()) + "-" + tag + "-" +
                          std::to_string(n) + ".step");
    }
};

Executor::Executor(ExecutorConfig cfg) : cfg_(std::move(cfg)) {
    ignore_sigpipe_once();
    if (cfg_.max_workers <= 0) {
        cfg_.max_workers = std::max(1u, std::thread::hardware_concurrency());
    }
    if (cfg_.scratch_dir.empty()) cfg_.scratch_dir = std::filesystem::temp_directory_path();
    std::filesystem::create_directories(cfg_.scratch_dir);
    cfg_.worker_path = resolve_worker_path(cfg_.worker_path);
    impl_ = std::make_unique<Impl>(cfg_.max_workers, cfg_.worker_path, cfg_.scratch_dir);
}

Executor::~Executor() = default;

bool Executor::dialect_registered(const std::string& id) { return id == script::kDialectId; }

ExecutionResult Executor::execute_program(const CadProgram& program, std::int64_t timeout_ms) const {
    if (!dialect_registered(program.dialect)) {
        throw ExecutorError("dialect not registered: " + program.dialect);
    }
    if (timeout_ms <= 0) timeout_ms = cfg_.program_timeout_ms;
    const auto model_path = impl_->scratch_file("model");

    json req;
    req["mode"] = "program";
    req["source"] = program.source;
    req["dialect"] = program.dialect;
    req["timeout_ms"] = timeout_ms;
    req["memory_limit_mb"] = cfg_.memory_limit_mb;
    req["model_out_path"] = model_path.string();

    Impl::Slot slot(impl_->slots);
    const auto t0 = std::chrono::steady_clock::now();
    const ExchangeOutcome ex = exchange(impl_->worker, req.dump(), timeout_ms + 400);
    ExecutionResult out;
    out.duration_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    if (ex.timed_out) {
        out.status = ExecStatus::timeout;
        return out;
    }
    if (!ex.got_response) {
        out.status = ExecStatus::runtime_error;
        out.trace = ex.exit_signal != 0
                        ? "worker terminated by signal " + std::to_string(ex.exit_signal)
                        : "worker exited without a response (code " +
                              std::to_string(ex.exit_code) + ")";
        return out;
    }
    json resp;
    try {
        resp = json::parse(ex.response);
    } catch (const std::exception& e) {
        out.status = ExecStatus::runtime_error;
        out.trace = std::string("malformed worker response: ") + e.what();
        return out;
    }
    out.status = exec_status_from_string(resp.value("status", "runtime-error"));
    out.trace = resp.value("trace", "");
    for (const auto& l : resp.value("logs", json::array())) out.logs.push_back(l);
    if (out.status == ExecStatus::ok && resp.contains("model_path")) {
        try {
            out.model = load_step(resp["model_path"].get<std::string>());
            out.model->source = program.source;
        } catch (const std::exception& e) {
            out.status = ExecStatus::runtime_error;
            out.model.reset();
            out.trace = std::string("failed to load produced model: ") + e.what();
        }
    }
    std::error_code ec;
    if (cfg_.keep_artifacts) {
        out.model_step_path = model_path.string();
    } else {
        std::filesystem::remove(model_path, ec);
    }
    return out;
}

TestExecution Executor::execute_test(const std::string& body, const BRepModel& model,
                                     std::int64_t timeout_ms) const {
    auto results = execute_tests({{"t", body}}, model, timeout_ms);
    return std::move(results.front());
}

std::vector<TestExecution> Executor::execute_tests(
    const std::vector<std::pair<std::string, std::string>>& tests, const BRepModel& model,
    std::int64_t per_test_timeout_ms) const {
    if (per_test_timeout_ms <= 0) per_test_timeout_ms = cfg_.test_timeout_ms;
    std::vector<TestExecution> out(tests.size());
    if (tests.empty()) return out;
    if (model.empty()) {
        for (auto& r : out) {
            r.verdict = script::TestVerdict::error;
            r.message = "no model under test";
        }
        return out;
    }

    const auto model_path = impl_->scratch_file("under-test");
    save_step(model, model_path);

    json req;
    req["mode"] = "tests";
    req["model_path"] = model_path.string();
    req["timeout_ms"] = per_test_timeout_ms;
    req["memory_limit_mb"] = cfg_.memory_limit_mb;
    req["tests"] = json::array();
    for (const auto& [id, body] : tests) {
        req["tests"].push_back({{"id", id}, {"body", body}});
    }

    // Wall deadline: per-test budgets plus loading/analysis allowance.
    const std::int64_t wall = per_test_timeout_ms * std::int64_t(tests.size()) + 30000;

    Impl::Slot slot(impl_->slots);
    const ExchangeOutcome ex = exchange(impl_->worker, req.dump(), wall);
    std::error_code ec;
    std::filesystem::remove(model_path, ec);

    auto fill_error = [&](const std::string& msg) {
        for (auto& r : out) {
            r.verdict = script::TestVerdict::error;
            r.message = msg;
        }
    };
    if (ex.timed_out) {
        fill_error("test worker exceeded its wall deadline");
        return out;
    }
    if (!ex.got_response) {
        fill_error(ex.exit_signal != 0
                       ? "test worker terminated by signal " + std::to_string(ex.exit_signal)
                       : "test worker exited without a response");
        return out;
    }
    json resp;
    try {
        resp = json::parse(ex.response);
    } catch (const std::exception& e) {
        fill_error(std::string("malformed worker response: ") + e.what());
        return out;
    }
    const auto& results = resp.value("results", json::array());
    for (size_t i = 0; i < tests.size() && i < results.size(); ++i) {
        const auto& r = results[i];
        out[i].verdict = script::test_verdict_from_string(r.value("verdict", "error"));
        out[i].message = r.value("message", "no message");
        for (const auto& l : r.value("logs", json::array())) out[i].logs.push_back(l);
        out[i].duration_ms = r.value("duration_ms", std::int64_t(0));
    }
    for (size_t i = results.size(); i < tests.size(); ++i) {
        out[i].verdict = script::TestVerdict::error;
        out[i].message = "worker returned no result for this test";
    }
    return out;
}

}  // namespace cadbench
