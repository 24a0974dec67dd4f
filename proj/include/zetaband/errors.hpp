#pragma once

#include <stdexcept>
#include <string>

namespace zetaband {

/* Base class so callers can catch everything this library throws with one
   handler while std::exception stays the outermost net. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/* Argument outside an operation's domain (bad band, sigma out of range, ...). */
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/* Evaluation requested within the exclusion radius of a pole. */
class PoleError : public DomainError {
public:
    PoleError(const std::string& what, double pole_location)
        : DomainError(what), pole(pole_location) {}
    double pole;
};

/* Exact integer/rational arithmetic left the representable range. */
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& what) : Error(what) {}
};

/* A request would exceed a hard memory/term-count cap. */
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(what) {}
};

/* A tolerance could not be certified (tail bound, quadrature convergence).
   Carries the estimates that failed to agree so callers can report them. */
class ToleranceError : public Error {
public:
    ToleranceError(const std::string& what, double achieved_, double requested_)
        : Error(what), achieved(achieved_), requested(requested_) {}
    double achieved;
    double requested;
};

/* A regression/fit had no usable data (all samples below threshold, too few
   points, too narrow a range). */
class FitError : public Error {
public:
    explicit FitError(const std::string& what) : Error(what) {}
};

} // namespace zetaband
