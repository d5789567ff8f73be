#pragma once

#include <stdexcept>
#include <string>

namespace cocreate
{

/// Base for every error the engine throws on purpose.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (odd k, empty label list, ...).
class ParameterError : public Error
{
public:
    using Error::Error;
};

/// Input is well-formed but carries no information (edgeless graph, zero variance, ...).
class DegenerateInputError : public Error
{
public:
    using Error::Error;
};

class SingularDesignError : public Error
{
public:
    using Error::Error;
};

/// The regressor has no variation left once the fixed effects are absorbed.
class NoIdentificationError : public Error
{
public:
    using Error::Error;
};

} // namespace cocreate
