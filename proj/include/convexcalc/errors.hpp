#pragma once

#include <stdexcept>
#include <string>

namespace convexcalc {

/// Base class for every error raised by the engine. The `code()` string is
/// stable and machine-readable; it is what the CLI reports in JSON output.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define CONVEXCALC_ERROR(Name)                                          \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what = #Name)                  \
            : Error(#Name, what) {}                                     \
    }

CONVEXCALC_ERROR(DimensionMismatch);
CONVEXCALC_ERROR(EmptySet);
CONVEXCALC_ERROR(DimensionCapExceeded);
CONVEXCALC_ERROR(EnumerationCapExceeded);
CONVEXCALC_ERROR(PieceCapExceeded);
CONVEXCALC_ERROR(PointInsideSet);
CONVEXCALC_ERROR(PointOutsideSet);
CONVEXCALC_ERROR(PointOutsideDomain);
CONVEXCALC_ERROR(PointOutsideGraph);
CONVEXCALC_ERROR(BasePointInvalid);
CONVEXCALC_ERROR(ContinuityHypothesisUnverifiable);
CONVEXCALC_ERROR(ValueUnattained);
CONVEXCALC_ERROR(MonotonicityUncertified);
CONVEXCALC_ERROR(UnboundedSubdifferential);
CONVEXCALC_ERROR(NoResidualPoint);
CONVEXCALC_ERROR(BadIndex);
CONVEXCALC_ERROR(InvalidInput);

#undef CONVEXCALC_ERROR

}  // namespace convexcalc
