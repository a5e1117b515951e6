#ifndef ARITHDYN_CLI_HPP
#define ARITHDYN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace arithdyn::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kInconclusive = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arithdyn::cli

#endif
