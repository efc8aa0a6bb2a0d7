#include "g2forge/g2.hpp"

namespace g2forge {

std::string to_string(TorsionClass c) {
  switch (c) {
    case TorsionClass::parallel:
      return "parallel";
    case TorsionClass::calibrated:
      return "calibrated";
    case TorsionClass::locally_conformal_parallel:
      return "locally_conformal_parallel";
    case TorsionClass::locally_conformal_calibrated:
      return "locally_conformal_calibrated";
    case TorsionClass::generic:
      return "generic";
  }
  return "generic";
}

}  // namespace g2forge
