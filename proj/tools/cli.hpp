#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hrw::cli {

// Runs one invocation (arguments without the program name). Returns 0 on
// success, 1 on a math or domain error and 2 on a usage or parse error; the
// latter two write a single "error: <Kind>: <message>" line to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace hrw::cli
