#ifndef KSUB_CLI_HPP
#define KSUB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ksub {

// Exit codes: 0 verified/success, 1 verified-false (witness printed),
// 2 usage or parse error, 3 enumeration budget exceeded.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ksub

#endif  // KSUB_CLI_HPP
