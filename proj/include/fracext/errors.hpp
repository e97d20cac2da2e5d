#pragma once

#include <stdexcept>
#include <string>

namespace fracext {

// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (poles, t <= 0, sector violations).
struct DomainError : Error {
    using Error::Error;
};

// A numerical scheme failed to reach its tolerance within the refinement cap.
struct ConvergenceError : Error {
    using Error::Error;
};

// Caller broke a precondition (bad hints, non-geometric grid, integrating h alone...).
struct ContractError : Error {
    using Error::Error;
};

// Operator is not diagonalizable within tolerance.
struct DefectiveError : Error {
    using Error::Error;
};

}  // namespace fracext
