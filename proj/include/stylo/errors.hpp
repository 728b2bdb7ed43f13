#ifndef STYLO_ERRORS_HPP
#define STYLO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stylo {

// Bad input data or parameters (exit code 2 at the CLI).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// I/O or parse failure while loading corpora and config files.
struct LoadError : std::runtime_error {
    explicit LoadError(const std::string& msg) : std::runtime_error(msg) {}
};

// A statistic has no defined value on the given input (e.g. no word tokens).
struct UndefinedStatistic : std::runtime_error {
    explicit UndefinedStatistic(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace stylo

#endif
