#include "tameforge/errors.hpp"

namespace tameforge {

Error::Error(std::string code, const std::string& message, Details details)
    : std::runtime_error(message), code_(std::move(code)), details_(std::move(details)) {}

TheoremViolation::TheoremViolation(const std::string& message, Details details)
    : Error("TheoremViolation", message, std::move(details)) {}

void ensure(bool condition, const std::string& message, Error::Details details) {
    if (!condition) throw TheoremViolation(message, std::move(details));
}

}  // namespace tameforge
