#pragma once

namespace powres {

/// Selects between the OpenMP kernel and the serial reference loop.
/// Both produce identical results; the serial path exists for testing
/// and benchmarking.
enum class Execution { serial, parallel };

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads() noexcept;

}  // namespace powres
