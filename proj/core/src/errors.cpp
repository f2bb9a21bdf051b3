#include "ftboost/errors.hpp"

namespace ftboost {

ConfigError::ConfigError(Category category, std::string field, const std::string& what)
    : std::runtime_error(what), category_(category), field_(std::move(field)) {}

const char* to_string(ConfigError::Category category) noexcept {
    switch (category) {
    case ConfigError::Category::Syntax: return "syntax";
    case ConfigError::Category::Schema: return "schema";
    case ConfigError::Category::Physics: return "physics";
    }
    return "unknown";
}

NumericalBlowup::NumericalBlowup(double time, const std::string& what)
    : std::runtime_error(what), time_(time) {}

}  // namespace ftboost
