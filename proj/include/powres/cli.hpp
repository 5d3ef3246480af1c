#pragma once

#include <iosfwd>

namespace powres {

/// Runs the `powres` command line. Returns 0 on success, 1 when the input is
/// rejected or a verification fails, 2 on usage errors.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace powres
