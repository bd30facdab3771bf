#pragma once

#include <stdexcept>
#include <string>

namespace intfac {

// Every failure the library reports derives from Error so callers (the CLI in
// particular) can map them onto exit codes with a single catch.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define INTFAC_DEFINE_ERROR(Name)                                         \
    class Name : public Error {                                           \
    public:                                                               \
        using Error::Error;                                               \
        const char* kind() const noexcept override { return #Name; }      \
    }

INTFAC_DEFINE_ERROR(ArgumentError);
INTFAC_DEFINE_ERROR(DivisionByZero);
INTFAC_DEFINE_ERROR(DegreeLimitExceeded);
INTFAC_DEFINE_ERROR(SyntaxError);
INTFAC_DEFINE_ERROR(OrderError);
INTFAC_DEFINE_ERROR(NonRationalError);
INTFAC_DEFINE_ERROR(DegenerateDenominator);
INTFAC_DEFINE_ERROR(JetOrderError);
INTFAC_DEFINE_ERROR(PreconditionFailed);
INTFAC_DEFINE_ERROR(BudgetExceeded);
INTFAC_DEFINE_ERROR(NotApplicable);
INTFAC_DEFINE_ERROR(DegenerateIntegral);
INTFAC_DEFINE_ERROR(EliminationBudgetExceeded);

#undef INTFAC_DEFINE_ERROR

} // namespace intfac
