#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace irf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class SingularError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::complex<double> previous,
                     std::complex<double> last)
        : Error(what), previous_(previous), last_(last) {}
    std::complex<double> previous() const { return previous_; }
    std::complex<double> last() const { return last_; }

private:
    std::complex<double> previous_;
    std::complex<double> last_;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

class StabilizationError : public Error {
public:
    using Error::Error;
};

class PositivityError : public Error {
public:
    using Error::Error;
};

class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace irf
