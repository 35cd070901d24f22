#pragma once

namespace lindblad {

// Entry point behind the lindblad executable. Returns the process exit code:
// 0 success, 1 numerical failure, 2 usage or model-file error.
int run_cli(int argc, char** argv);

}  // namespace lindblad
