#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sumsetlab {

// Entry point shared by the binary and the tests. args excludes argv[0].
// Exit codes: 0 success/verified, 1 search failure or rejected
// certificate, 2 usage or input errors.
int cliMain(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sumsetlab
