#ifndef LBFD_CLI_HPP
#define LBFD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "lbfd/scheme.hpp"

namespace lbfd {

// Parse the flat section-based scheme file format (see docs/scheme-format.md).
SchemeSpec parse_scheme_file(const std::string& text, const std::string& name = "scheme");
SchemeSpec load_scheme_file(const std::string& path);

// Resolve --scheme: catalog name, then file path, then a .scheme file in the
// directory named by LBFD_SCHEME_PATH.
SchemeSpec resolve_scheme(const std::string& ref, int link_w);

// Entry point used by the binary and the tests. Returns the process exit
// code: 0 ok, 1 user error, 2 internal invariant failure, 3 divergence.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lbfd

#endif
