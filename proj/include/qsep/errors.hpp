#pragma once

#include <stdexcept>
#include <string>

namespace qsep {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularPointError : Error {
    using Error::Error;
};
struct InvalidCaseError : Error {
    using Error::Error;
};
struct DomainViolationError : Error {
    using Error::Error;
};
struct DerivativeZeroError : Error {
    using Error::Error;
};
struct EmptyDomainError : Error {
    using Error::Error;
};
struct NotQuasiseparableError : Error {
    using Error::Error;
};
struct BoundaryContaminationError : Error {
    using Error::Error;
};
struct NotConfiningError : Error {
    using Error::Error;
};
struct NoConvergenceError : Error {
    using Error::Error;
};
struct InvalidWavenumberError : Error {
    using Error::Error;
};
struct DegenerateFrequenciesError : Error {
    using Error::Error;
};
struct RankDeficiencyError : Error {
    using Error::Error;
};
struct ConfigParseError : Error {
    using Error::Error;
};

} // namespace qsep
