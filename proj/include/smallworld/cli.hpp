#ifndef SMALLWORLD_CLI_HPP
#define SMALLWORLD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace smallworld {

/// Entry point of the `smallworld` tool. `args` excludes the program name.
/// Results go to `out` (or the --out file), diagnostics to `err`. Returns the
/// process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smallworld

#endif
