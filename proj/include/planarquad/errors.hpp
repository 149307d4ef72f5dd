#pragma once

#include <stdexcept>
#include <string>

namespace planarquad {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, configuration or scenario contents.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Matrix or vector shapes that do not fit together.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Rational function with an identically zero denominator.
class InvalidRationalError : public Error {
public:
    using Error::Error;
};

/// Input outside the family of forms an operation supports.
class UnsupportedFormError : public Error {
public:
    using Error::Error;
};

/// Two trajectories sampled on different time grids.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

} // namespace planarquad
