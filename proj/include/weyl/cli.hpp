#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace weyl {

/// Runs the weyl-lab front end on `args` (without the program name).
/// Returns 0 on success, 1 on runtime errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weyl
