#pragma once

#include <stdexcept>
#include <string>

namespace dqpt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hilbert-space size violations (site out of range, N beyond the cap, shape mismatch).
struct DimensionError : Error {
    using Error::Error;
};

// A precondition on operator inputs was violated (non-commuting pair, non-orthonormal manifold).
struct ContractError : Error {
    using Error::Error;
};

// Near-degenerate ground state where the protocol requires a unique one.
struct DegeneracyError : Error {
    using Error::Error;
};

// Integration quality gate tripped (trace drift or negativity beyond tolerance).
struct IntegrationError : Error {
    using Error::Error;
};

// Configuration file problems, reported with the offending key path.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace dqpt
