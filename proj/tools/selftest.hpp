#pragma once

#include <ostream>

namespace chanpred::selftest {

// Runs the oracle cross-check suite, printing one line per check.
// Returns true when every check passes.
bool run_all(std::ostream& out);

}  // namespace chanpred::selftest
