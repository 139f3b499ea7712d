#pragma once

#include <stdexcept>
#include <string>

namespace igal {

/// Base class of every error raised by the library. `category()` groups errors
/// by pipeline stage so front ends can map them onto exit codes.
class Error : public std::runtime_error {
public:
    enum class Category { Input, Assembly, Solver, Metric };

    Error(Category category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    Category category() const noexcept { return category_; }

private:
    Category category_;
};

/// Parameter outside the knot range or parametric domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(Category::Assembly, what) {}
};

class UnsupportedDerivativeError : public Error {
public:
    explicit UnsupportedDerivativeError(const std::string& what) : Error(Category::Assembly, what) {}
};

class InvalidKnotVectorError : public Error {
public:
    explicit InvalidKnotVectorError(const std::string& what) : Error(Category::Input, what) {}
};

class InvalidRefinementError : public Error {
public:
    explicit InvalidRefinementError(const std::string& what) : Error(Category::Input, what) {}
};

class SingularGeometryError : public Error {
public:
    explicit SingularGeometryError(const std::string& what) : Error(Category::Assembly, what) {}
};

class InvalidSchemeError : public Error {
public:
    explicit InvalidSchemeError(const std::string& what) : Error(Category::Input, what) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(Category::Input, what) {}
};

class AssemblyError : public Error {
public:
    explicit AssemblyError(const std::string& what) : Error(Category::Assembly, what) {}
};

class SingularSystemError : public Error {
public:
    SingularSystemError(const std::string& what, std::size_t pivot)
        : Error(Category::Solver, what), pivot_(pivot) {}
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class RankDeficientError : public Error {
public:
    RankDeficientError(const std::string& what, std::size_t pivot)
        : Error(Category::Solver, what), pivot_(pivot) {}
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class UndefinedMetricError : public Error {
public:
    explicit UndefinedMetricError(const std::string& what) : Error(Category::Metric, what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(Category::Input, what) {}
};

} // namespace igal
