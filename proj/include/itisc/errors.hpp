#ifndef ITISC_ERRORS_HPP
#define ITISC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace itisc {

/// Bad configuration or malformed input (unknown names, missing files,
/// inconsistent grids). Maps to CLI exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure at runtime (degenerate cluster, non-SPD covariance).
/// Maps to CLI exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace itisc

#endif  // ITISC_ERRORS_HPP
