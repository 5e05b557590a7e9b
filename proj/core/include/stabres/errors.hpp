#pragma once

#include <stdexcept>
#include <string>

namespace stabres {

// Base class for all pipeline errors so callers can catch one type at the
// CLI boundary.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define STABRES_DEFINE_ERROR(Name)                                    \
    class Name : public Error {                                       \
    public:                                                           \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    }

STABRES_DEFINE_ERROR(InvalidArgument);
STABRES_DEFINE_ERROR(QuadratureUnderResolved);
STABRES_DEFINE_ERROR(NotSymmetric);
STABRES_DEFINE_ERROR(NoConvergence);
STABRES_DEFINE_ERROR(EmptyWindow);
STABRES_DEFINE_ERROR(OverlappingCrossings);
STABRES_DEFINE_ERROR(SignTrackingFailure);
STABRES_DEFINE_ERROR(MinimumAtBoundary);
STABRES_DEFINE_ERROR(NegativeDiscriminant);
STABRES_DEFINE_ERROR(NoRoot);
STABRES_DEFINE_ERROR(NoRealRoot);
STABRES_DEFINE_ERROR(ThresholdViolation);
STABRES_DEFINE_ERROR(IllConditioned);
STABRES_DEFINE_ERROR(TrackingLost);
STABRES_DEFINE_ERROR(UnstableWindow);
STABRES_DEFINE_ERROR(NoStationaryPoint);
STABRES_DEFINE_ERROR(SchemaError);

#undef STABRES_DEFINE_ERROR

}  // namespace stabres
