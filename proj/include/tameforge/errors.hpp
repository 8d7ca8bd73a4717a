#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tameforge {

/// Domain error carrying a stable machine-readable code.
class Error : public std::runtime_error {
public:
    using Details = std::vector<std::pair<std::string, std::string>>;

    Error(std::string code, const std::string& message, Details details = {});

    const std::string& code() const noexcept { return code_; }
    const Details& details() const noexcept { return details_; }

private:
    std::string code_;
    Details details_;
};

/// Raised when an exact check of a proven identity fails.
class TheoremViolation : public Error {
public:
    TheoremViolation(const std::string& message, Details details = {});
};

/// Internal consistency check; throws TheoremViolation with the given message.
void ensure(bool condition, const std::string& message, Error::Details details = {});

}  // namespace tameforge
