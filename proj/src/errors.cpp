#include "casimir/errors.hpp"

namespace casimir {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e)) return kExitValidation;
  if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const FitError*>(&e)) return kExitFit;
  return kExitNumerical;
}

}  // namespace casimir
