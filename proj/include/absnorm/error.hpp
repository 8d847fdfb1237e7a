#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace absnorm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A norm description that does not define an absolute, normalised norm.
class SpecError : public Error {
public:
    using Error::Error;
};

// Argument outside the domain of an operation (non-finite input, |x| > 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Mini-language parse failure; position is a byte offset into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Difference quotients crossed by more than the root-finding allowance.
class ConcavityViolation : public Error {
public:
    using Error::Error;
};

class DegenerateError : public Error {
public:
    using Error::Error;
};

// Endpoint case analysis could not separate two or more cases within tolerance.
class UndecidedCaseError : public Error {
public:
    UndecidedCaseError(const std::string& what, std::vector<std::string> candidates)
        : Error(what), candidates_(std::move(candidates)) {}
    const std::vector<std::string>& candidates() const noexcept { return candidates_; }

private:
    std::vector<std::string> candidates_;
};

// A hypothesis of an operation is unavailable, e.g. the ball condition fails
// for the requested epsilon.
class PreconditionError : public Error {
public:
    PreconditionError(const std::string& what, double epsilon)
        : Error(what), epsilon_(epsilon) {}
    double epsilon() const noexcept { return epsilon_; }

private:
    double epsilon_;
};

} // namespace absnorm
