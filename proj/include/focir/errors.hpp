#ifndef FOCIR_ERRORS_HPP
#define FOCIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace focir {

// Config/usage problems: bad flags, malformed config files, invalid hyperparameters.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Data problems: unreadable files, out-of-range records, shape mismatches in inputs.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// Numeric failures: NaN/Inf encountered, divergence during training.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace focir

#endif
