#pragma once

#include <ostream>

namespace biham::cli {

// Exit status: 0 all checks passed, 1 a check failed (report still written),
// 2 bad arguments or an invalid spec.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace biham::cli
