#ifndef QCORR_ERRORS_HPP
#define QCORR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcorr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
    using Error::Error;
};
struct NotPSD : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct NotPhysical : Error {
    using Error::Error;
};
struct BadProbability : Error {
    using Error::Error;
};
struct BadWeights : Error {
    using Error::Error;
};
struct DegenerateInput : Error {
    using Error::Error;
};
struct BadGrid : Error {
    using Error::Error;
};
struct NegativeInput : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};

} // namespace qcorr

#endif
