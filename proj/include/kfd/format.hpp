#pragma once
#include <string>

namespace kfd {

// shortest decimal string that round-trips the double
std::string fmt_shortest(double v);

// 17 significant digits (the summatory CSV contract)
std::string fmt_sig17(double v);

const char* version();

} // namespace kfd
