// Command-line front end. Exit codes: 0 verified/true, 1 false with witness, 2 usage or input error.
#pragma once

#include <iosfwd>

namespace wdp {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wdp
