#pragma once

#include <stdexcept>
#include <string>

namespace stochcode {

// Precondition violated by the caller (bad lengths, duplicate points, ...).
class BadInput : public std::invalid_argument {
public:
    explicit BadInput(const std::string& what) : std::invalid_argument(what) {}
};

class DivisionByZero : public std::domain_error {
public:
    explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

// A randomized construction ran out of candidates.
class SearchExhausted : public std::runtime_error {
public:
    explicit SearchExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Serialized data could not be parsed.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw BadInput(what);
}

} // namespace stochcode
