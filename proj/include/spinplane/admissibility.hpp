#pragma once

#include <stdexcept>
#include <string>

namespace spinplane {

// Parameters outside the range where a closed-form solution exists.
struct AdmissibilityError : std::domain_error {
  explicit AdmissibilityError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace spinplane
