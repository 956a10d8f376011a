// Command-line front end. Exit codes:
//   0 Asserted, 1 Refuted, 2 Undetermined, 3 Degenerate
//   64 usage error, 65 parse or validation error, 66 input file missing,
//   70 incoherent square of opposition

#ifndef QUANTSCOPE_TOOLS_CLI_HPP
#define QUANTSCOPE_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace quantscope::cli {

inline constexpr int kUsage = 64;
inline constexpr int kDataError = 65;
inline constexpr int kNoInput = 66;
inline constexpr int kIncoherent = 70;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace quantscope::cli

#endif // QUANTSCOPE_TOOLS_CLI_HPP
