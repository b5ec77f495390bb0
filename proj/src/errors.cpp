#include "qho/errors.hpp"

#include <cmath>

namespace qho::detail {

void require_positive_finite(double value, const char* field) {
  if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
  if (!(value > 0.0)) throw ValidationError(field, "must be positive");
}

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
}

}  // namespace qho::detail
