#pragma once

#include <ostream>

namespace isogauss {

/// Entry point of the isogauss command line tool. Returns 0 on success,
/// 1 when an identity fails, 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace isogauss
