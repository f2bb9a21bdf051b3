#pragma once

#include <stdexcept>
#include <string>

namespace ftboost {

/// Rejected configuration. `field` names the offending key path
/// (e.g. "phases[0].arrangement.t_d"); empty when the whole document is bad.
class ConfigError : public std::runtime_error {
public:
    enum class Category { Syntax, Schema, Physics };

    ConfigError(Category category, std::string field, const std::string& what);

    [[nodiscard]] Category category() const noexcept { return category_; }
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    Category category_;
    std::string field_;
};

[[nodiscard]] const char* to_string(ConfigError::Category category) noexcept;

/// A state variable left the finite range during integration.
class NumericalBlowup : public std::runtime_error {
public:
    NumericalBlowup(double time, const std::string& what);

    [[nodiscard]] double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace ftboost
