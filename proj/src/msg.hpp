#pragma once

#include <sstream>
#include <string>

namespace casimir::detail {

template <class... Parts>
std::string msg(Parts&&... parts) {
  std::ostringstream os;
  os.precision(12);
  (os << ... << parts);
  return os.str();
}

}  // namespace casimir::detail
