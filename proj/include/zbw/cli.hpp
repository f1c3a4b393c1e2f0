#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zbw {

// Run the zbw command line. args excludes the program name. Returns the
// process exit code: 0 on success, 2 on usage errors (bad flags, unreadable
// files), 3 on domain errors (violated physical preconditions).
int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace zbw
