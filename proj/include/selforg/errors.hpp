#pragma once

#include <stdexcept>
#include <string>

namespace selforg {

/// Base class of every error raised by the library.  The CLI maps the
/// category to its exit code.
class Error : public std::runtime_error
{
public:
    enum class Category { config, convergence, numerical };

    Error(Category category, const std::string& what)
        : std::runtime_error(what), category_(category)
    {}

    Category category() const noexcept { return category_; }

private:
    Category category_;
};

/// Bad parameters or malformed input documents.
class ConfigError : public Error
{
public:
    explicit ConfigError(const std::string& what) : Error(Category::config, what) {}
};

/// Non-finite entries or otherwise unusable state vectors.
class InvalidStateError : public Error
{
public:
    explicit InvalidStateError(const std::string& what) : Error(Category::config, what) {}
};

/// Two atoms at the same position.
class DegenerateConfigurationError : public Error
{
public:
    explicit DegenerateConfigurationError(const std::string& what)
        : Error(Category::config, what)
    {}
};

/// Atoms closer than the crossing guard or out of order.
class OrderingViolationError : public Error
{
public:
    explicit OrderingViolationError(const std::string& what)
        : Error(Category::config, what)
    {}
};

/// A parameter outside the domain of a formula (e.g. Bloch dispersion at
/// zero free-space loss).
class ParameterDomainError : public Error
{
public:
    explicit ParameterDomainError(const std::string& what) : Error(Category::config, what) {}
};

class IllConditionedError : public Error
{
public:
    IllConditionedError(const std::string& what, double condition)
        : Error(Category::numerical, what), condition_(condition)
    {}

    /// Estimated 1-norm condition number of the offending matrix.
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

class DivergenceError : public Error
{
public:
    explicit DivergenceError(const std::string& what) : Error(Category::numerical, what) {}
};

class NumericalError : public Error
{
public:
    explicit NumericalError(const std::string& what) : Error(Category::numerical, what) {}
};

/// Relaxation ran out of time.  Carries the last convergence metrics so
/// the caller can decide to raise the damping or the time budget.
class TimeoutError : public Error
{
public:
    TimeoutError(const std::string& what, double max_momentum, double max_force, double time)
        : Error(Category::convergence, what),
          max_momentum_(max_momentum), max_force_(max_force), time_(time)
    {}

    double max_momentum() const noexcept { return max_momentum_; }
    double max_force() const noexcept { return max_force_; }
    double time() const noexcept { return time_; }

private:
    double max_momentum_;
    double max_force_;
    double time_;
};

} // namespace selforg
