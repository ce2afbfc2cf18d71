#pragma once

#include <stdexcept>
#include <string>

namespace hzreach
{

/// Incompatible block shapes; the message names the offending block.
struct DimensionMismatch : std::invalid_argument
{
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument("DimensionMismatch: " + what) {}
};

struct NonFiniteEntry : std::invalid_argument
{
    explicit NonFiniteEntry(const std::string& what) : std::invalid_argument("NonFiniteEntry: " + what) {}
};

struct UnsortedBreakpoints : std::invalid_argument
{
    explicit UnsortedBreakpoints(const std::string& what) : std::invalid_argument("UnsortedBreakpoints: " + what) {}
};

struct TooFewVertices : std::invalid_argument
{
    explicit TooFewVertices(const std::string& what) : std::invalid_argument("TooFewVertices: " + what) {}
};

struct EvaluationFailure : std::runtime_error
{
    explicit EvaluationFailure(const std::string& what) : std::runtime_error("EvaluationFailure: " + what) {}
};

struct NegativeDelta : std::invalid_argument
{
    explicit NegativeDelta(const std::string& what) : std::invalid_argument("NegativeDelta: " + what) {}
};

/// A nonlinear term's argument range is not covered by the enclosure's domain.
struct DomainNotCovered : std::invalid_argument
{
    explicit DomainNotCovered(const std::string& what) : std::invalid_argument("DomainNotCovered: " + what) {}
};

struct NonScalarArgument : std::invalid_argument
{
    explicit NonScalarArgument(const std::string& what) : std::invalid_argument("NonScalarArgument: " + what) {}
};

/// The argument set escapes the state-update set's domain; carries the step index.
struct DomainViolation : std::runtime_error
{
    DomainViolation(int step_index, const std::string& what)
        : std::runtime_error("DomainViolation at step " + std::to_string(step_index) + ": " + what),
          step(step_index)
    {
    }
    int step;
};

/// The LP layer could not certify a result; never silently wrong-signed.
struct NumericalFailure : std::runtime_error
{
    explicit NumericalFailure(const std::string& what) : std::runtime_error("NumericalFailure: " + what) {}
};

/// Leaf enumeration exceeded its cap; carries the count found so far (a lower bound).
struct CapExceeded : std::runtime_error
{
    CapExceeded(long partial, const std::string& what)
        : std::runtime_error("CapExceeded: " + what), partial_count(partial)
    {
    }
    long partial_count;
};

struct ConfigError : std::runtime_error
{
    explicit ConfigError(const std::string& what) : std::runtime_error("ConfigError: " + what) {}
};

} // namespace hzreach
