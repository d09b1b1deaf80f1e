#pragma once

#include <stdexcept>
#include <string>

namespace wft {

// Every failure raised by the library derives from Error; the concrete type
// names the condition so callers can catch selectively.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define WFT_DECLARE_ERROR(Name)                                              \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

WFT_DECLARE_ERROR(OutOfRange);
WFT_DECLARE_ERROR(InvalidWindow);
WFT_DECLARE_ERROR(NoConjugate);
WFT_DECLARE_ERROR(NegativeInput);
WFT_DECLARE_ERROR(NotSorted);
WFT_DECLARE_ERROR(EqualStates);
WFT_DECLARE_ERROR(GridTooFine);
WFT_DECLARE_ERROR(ValueOffGrid);
WFT_DECLARE_ERROR(EventStorm);
WFT_DECLARE_ERROR(HistoryGap);
WFT_DECLARE_ERROR(NoPairs);
WFT_DECLARE_ERROR(MissingGauge);
WFT_DECLARE_ERROR(NotConvex);
WFT_DECLARE_ERROR(NotMonotone);
WFT_DECLARE_ERROR(NoStraddlingPairs);
WFT_DECLARE_ERROR(DepthTooLarge);
WFT_DECLARE_ERROR(ParameterSearchFailed);
WFT_DECLARE_ERROR(ParseError);
WFT_DECLARE_ERROR(CheckFailure);
WFT_DECLARE_ERROR(InvalidArgument);

#undef WFT_DECLARE_ERROR

} // namespace wft
