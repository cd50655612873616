#include "bicons/space_form.hpp"

#include "bicons/errors.hpp"

namespace bicons {

SpaceFormSign::SpaceFormSign(int eps) : eps_(eps) {
  if (eps != -1 && eps != 0 && eps != 1) {
    throw DomainError("space form sign must be -1, 0 or +1 (got " + std::to_string(eps) + ")");
  }
}

std::string SpaceFormSign::ambient_name() const {
  switch (eps_) {
    case -1: return "H3";
    case 0: return "R3";
    default: return "S3";
  }
}

double ExtendedReal::value() const {
  if (infinite_) throw NotApplicable("extended real is +infinity");
  return value_;
}

}  // namespace bicons
