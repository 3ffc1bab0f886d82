#ifndef CONJOPT_ERRORS_HPP
#define CONJOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conjopt {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument vector length does not match a tensor slot.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Tensor shape unsuitable for the operation (non-cubical, wrong mode size).
class ShapeError : public Error {
public:
    using Error::Error;
};

// Coefficient map violates the conjugate-pairing condition that makes a
// general conjugate form real-valued.
class RealValuednessError : public Error {
public:
    using Error::Error;
};

// Variable index outside 1..n in a coefficient key.
class IndexRangeError : public Error {
public:
    using Error::Error;
};

// Complex evaluation of a supposedly real quantity left a non-negligible
// imaginary residue; signals a corrupted form or tensor.
class ImaginaryResidueError : public Error {
public:
    using Error::Error;
};

class NotConjugateSuperSymmetric : public Error {
public:
    using Error::Error;
};

class NotSquareFree : public Error {
public:
    using Error::Error;
};

class NotSquareFreeInVariable : public Error {
public:
    using Error::Error;
};

// Constraint-set parameter invalid (e.g. root order m < 3).
class ConstraintError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class EnumerationTooLarge : public Error {
public:
    using Error::Error;
};

class ConvexNotAsserted : public Error {
public:
    using Error::Error;
};

class ConvexHullViolation : public Error {
public:
    using Error::Error;
};

class ZeroMatrix : public Error {
public:
    using Error::Error;
};

class OddDegree : public Error {
public:
    using Error::Error;
};

class JsonFormatError : public Error {
public:
    using Error::Error;
};

} // namespace conjopt

#endif
