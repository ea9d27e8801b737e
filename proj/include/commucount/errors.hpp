#pragma once

#include <stdexcept>
#include <string>

namespace commucount {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration or sieve would exceed its WorkBudget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class NotPrime : public Error {
public:
    explicit NotPrime(unsigned long long p)
        : Error("not a prime: " + std::to_string(p)) {}
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class UnsupportedDimension : public Error {
public:
    using Error::Error;
};

/// Malformed caller input (negative box size, bad set file, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

}  // namespace commucount
