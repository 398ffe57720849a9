#pragma once

#include <ostream>

/// Embedded invariant suite; prints a JSON report and returns overall success.
bool run_selftest(std::ostream& out);
