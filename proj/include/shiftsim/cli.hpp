#ifndef SHIFTSIM_CLI_HPP
#define SHIFTSIM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftsim {
namespace cli {

// Exit codes: 0 success, 1 mathematical failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct OpCoverage {
  const char* operation;   // library operation
  const char* subcommand;  // subcommand exercising it
};

// Every public library operation mapped to a subcommand that reaches it.
const std::vector<OpCoverage>& operation_coverage();

const std::vector<std::string>& subcommand_names();

}  // namespace cli
}  // namespace shiftsim

#endif
