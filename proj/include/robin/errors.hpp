#pragma once

#include <stdexcept>
#include <string>

namespace robin {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ROBIN_DEFINE_ERROR(Name)                 \
    class Name : public Error {                  \
    public:                                      \
        explicit Name(const std::string& what)   \
            : Error(#Name ": " + what) {}        \
    }

ROBIN_DEFINE_ERROR(PreconditionError);
ROBIN_DEFINE_ERROR(DegenerateCurve);
ROBIN_DEFINE_ERROR(ConvergenceFailure);
ROBIN_DEFINE_ERROR(AmbiguousMaximum);
ROBIN_DEFINE_ERROR(FactorizationFailure);
ROBIN_DEFINE_ERROR(NoConvergence);
ROBIN_DEFINE_ERROR(BadGrid);
ROBIN_DEFINE_ERROR(OutOfRegime);
ROBIN_DEFINE_ERROR(OutOfTube);
ROBIN_DEFINE_ERROR(FitFailure);
ROBIN_DEFINE_ERROR(UnsupportedRegime);
ROBIN_DEFINE_ERROR(SpecError);

#undef ROBIN_DEFINE_ERROR

}  // namespace robin
