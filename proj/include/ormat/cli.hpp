#pragma once

// Command-line front end.  'run' is the whole program minus process glue,
// so tests can drive it with argument vectors and string streams.  Exit
// codes: 0 success / verdict HOLDS, 1 negative verdict (violated matrix,
// target not reached, failed --verify), 2 usage errors, 3 I/O or data
// errors.  Matrices go to 'out' in the standard text format (plus '#'
// comment lines); statistics and progress go to 'err'.

#include <iosfwd>
#include <string>
#include <vector>

namespace ormat {

int run(std::vector<std::string> args, std::ostream &out, std::ostream &err);

} // namespace ormat
