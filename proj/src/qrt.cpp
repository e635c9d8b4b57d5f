#include "gfd/qrt.hpp"

namespace gfd {

std::string to_string(Qrt kind) {
  switch (kind) {
    case Qrt::Bipartite2Q: return "bipartite2q";
    case Qrt::Multipartite: return "multipartite";
    case Qrt::Fermionic: return "fermionic";
    case Qrt::Spin: return "spin";
    case Qrt::Clifford: return "clifford";
  }
  throw InternalError("unknown qrt");
}

Qrt qrt_from_string(const std::string& name) {
  if (name == "bipartite2q") return Qrt::Bipartite2Q;
  if (name == "multipartite") return Qrt::Multipartite;
  if (name == "fermionic") return Qrt::Fermionic;
  if (name == "spin") return Qrt::Spin;
  if (name == "clifford") return Qrt::Clifford;
  throw ParameterError("unknown qrt: " + name);
}

} // namespace gfd
