#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace expofield {

/// Runs one command line (without the program name). Results go to `out` as
/// canonical JSON; returns 0 on success, 1 on usage or input errors and 2 on
/// domain errors, whose JSON carries the certificate.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expofield
