#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace poslab::cli {

/// Exit codes: 0 success, 1 a verification tolerance was exceeded (or a
/// consistency check failed), 2 invalid input. Errors are printed as JSON
/// {"schema": 1, "error": {"code", "message"}} on `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace poslab::cli
