// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace trdim {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside the operation's domain (bad exponent, index out
/// of range, malformed weight sequence, coordinates outside the unit cube).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The operation belongs to the other exponent regime (p = 1 uses the max
/// combine rule, p > 1 the p*-th power rule).
class ModeMismatch : public Error {
public:
    using Error::Error;
};

/// A series or product diverges under the given weights.
class DivergentError : public Error {
public:
    using Error::Error;
};

/// A bound's admissibility condition fails (e.g. a <= max(1/p*, b) for POD
/// decay weights).
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

/// No index satisfies the requested threshold.
class NoSolutionError : public Error {
public:
    using Error::Error;
};

/// Subset enumeration refused: the dimension exceeds the enumeration cap.
class EnumerationLimitError : public Error {
public:
    using Error::Error;
};

}  // namespace trdim
