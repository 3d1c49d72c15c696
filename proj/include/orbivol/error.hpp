#pragma once

#include <stdexcept>
#include <string>

namespace orbivol {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Interval too wide to single out one rational.
class AmbiguousInterval : public Error {
public:
    using Error::Error;
};

class ReconstructionFailed : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
};

// A prime divides the polynomial index and the table supplies no override.
class UncertifiedPrime : public Error {
public:
    UncertifiedPrime(unsigned long p, const std::string& label)
        : Error("prime " + std::to_string(p) + " has no certified splitting in field " + label),
          prime_(p) {}
    unsigned long prime() const { return prime_; }

private:
    unsigned long prime_;
};

class NotFundamental : public Error {
public:
    using Error::Error;
};

class OddCharacter : public Error {
public:
    using Error::Error;
};

class IllegalType : public Error {
public:
    using Error::Error;
};

class ParityViolation : public Error {
public:
    using Error::Error;
};

}  // namespace orbivol
