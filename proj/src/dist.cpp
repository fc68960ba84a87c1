#include "hyperflow/dist.hpp"

#include <sstream>

namespace hyperflow {

std::string dist_str(const Dist& d) {
  std::ostringstream out;
  out << "{{";
  bool first = true;
  for (const auto& [v, w] : d.entries()) {
    if (!first) out << ", ";
    first = false;
    out << v.str() << " @ " << rat_str(w);
  }
  out << "}}";
  return out.str();
}

}  // namespace hyperflow
