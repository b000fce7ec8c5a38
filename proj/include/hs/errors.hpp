#pragma once

#include <stdexcept>
#include <string>

namespace hs {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- parameter / certificate errors -----------------------------------------

class OutOfAdmissibleRegion : public Error {
public:
    using Error::Error;
};

class Mu1TooLarge : public Error {
public:
    using Error::Error;
};

class WeightsInadmissible : public Error {
public:
    using Error::Error;
};

class RadiusTooLarge : public Error {
public:
    using Error::Error;
};

class GainsInadmissible : public Error {
public:
    using Error::Error;
};

// -- discretization / integrator errors -------------------------------------

class InvalidCellCount : public Error {
public:
    using Error::Error;
};

class GridTooCoarse : public Error {
public:
    using Error::Error;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class NonFiniteState : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

// -- diagnostics errors ------------------------------------------------------

class NotLinearRun : public Error {
public:
    using Error::Error;
};

class EmptyWindow : public Error {
public:
    using Error::Error;
};

class NonPositiveEnergy : public Error {
public:
    using Error::Error;
};

class HorizonTooShort : public Error {
public:
    using Error::Error;
};

class NotDefined : public Error {
public:
    using Error::Error;
};

// -- spectral errors ----------------------------------------------------------

class EigensolveFailure : public Error {
public:
    using Error::Error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

// -- configuration -------------------------------------------------------------

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0) : Error(what), line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

}  // namespace hs
