#pragma once

namespace obsnet {

// Exit codes: 0 success, 2 usage error, 3 infeasibility or size-guard
// refusal, 4 internal invariant violation.
int run_cli(int argc, const char* const* argv);

}  // namespace obsnet
