#pragma once

#include <stdexcept>
#include <string>

namespace dbar {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AxisDegenerate : Error {
    using Error::Error;
};
struct ZeroLambda : Error {
    using Error::Error;
};
struct ZeroMomentum : Error {
    using Error::Error;
};
struct NotOnVariety : Error {
    using Error::Error;
};
struct ShiftDegenerate : Error {
    using Error::Error;
};
struct QuadratureFailure : Error {
    using Error::Error;
};
struct OutOfDomain : Error {
    using Error::Error;
};
struct MomentumOffGrid : Error {
    using Error::Error;
};
struct EmptyGrid : Error {
    using Error::Error;
};
struct EmptyField : Error {
    using Error::Error;
};
struct EtaTooLarge : Error {
    using Error::Error;
};
struct NotConverged : Error {
    using Error::Error;
};
struct FeasibilityViolated : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace dbar
