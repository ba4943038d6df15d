#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace ncreal {

// Bad shapes, malformed files, undefined expressions. Exit code 2 at the CLI.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Singular pencils or matrices. Exit code 3 at the CLI.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double sigma_min)
        : std::runtime_error(what), sigma_min_(sigma_min) {}
    double sigma_min() const { return sigma_min_; }

private:
    double sigma_min_;
};

inline std::string format_sigma(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", s);
    return buf;
}

}  // namespace ncreal
