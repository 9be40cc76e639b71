#pragma once

#include <iosfwd>

namespace topicnet::cli {

/// Entry point of the `topicnet` executable. Returns 0 on success, 1 on a
/// usage error and 2 on a data error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace topicnet::cli
