#pragma once

#include <iosfwd>

namespace cadbench {

/// Worker entry point: reads one line-delimited JSON request from `in`,
/// executes it, writes one JSON response line to `out`, and returns the
/// process exit code. Request schema:
///   {"mode":"program","source":...,"dialect":...,"timeout_ms":N,
///    "memory_limit_mb":N,"model_out_path":...}
///   {"mode":"test","body":...,"model_path":...,"timeout_ms":N,...}
///   {"mode":"tests","tests":[{"id":...,"body":...}],"model_path":...,
///    "timeout_ms":N,...}
int worker_serve(std::istream& in, std::ostream& out);

}  // namespace cadbench
