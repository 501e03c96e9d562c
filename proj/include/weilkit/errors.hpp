#pragma once

#include <stdexcept>
#include <string>

namespace weil {

/// Base class for every error raised by weilkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define WEILKIT_DEFINE_ERROR(Name)          \
    class Name : public Error {             \
    public:                                 \
        using Error::Error;                 \
    }

WEILKIT_DEFINE_ERROR(DimensionError);
WEILKIT_DEFINE_ERROR(SymmetryError);
WEILKIT_DEFINE_ERROR(SingularMatrixError);
WEILKIT_DEFINE_ERROR(NotSymplecticError);
WEILKIT_DEFINE_ERROR(DomainError);
WEILKIT_DEFINE_ERROR(NearSingularCocycleError);
WEILKIT_DEFINE_ERROR(ContinuationError);
WEILKIT_DEFINE_ERROR(BoundaryCausticError);
WEILKIT_DEFINE_ERROR(SingularCError);
WEILKIT_DEFINE_ERROR(FactorizationError);
WEILKIT_DEFINE_ERROR(StepError);
WEILKIT_DEFINE_ERROR(TailError);
WEILKIT_DEFINE_ERROR(IntegratorError);
WEILKIT_DEFINE_ERROR(FormatError);

#undef WEILKIT_DEFINE_ERROR

/// Raised when a kernel is requested at a time where det C(t) vanishes.
class SingularFocalPointError : public Error {
public:
    SingularFocalPointError(const std::string& what, double t) : Error(what), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

}  // namespace weil
