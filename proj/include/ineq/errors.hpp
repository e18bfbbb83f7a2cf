#pragma once

#include <stdexcept>
#include <string>

namespace ineq {

// Error taxonomy shared by all modules. Every refusal the library can make
// maps to one exception type so callers and tests can discriminate.

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define INEQ_DEFINE_ERROR(Name)                                          \
    struct Name : Error {                                                \
        explicit Name(const std::string& what) : Error(what) {}          \
    }

INEQ_DEFINE_ERROR(NonConvergent);          // adaptive refinement exhausted
INEQ_DEFINE_ERROR(NonFinite);              // a sampled value was not finite
INEQ_DEFINE_ERROR(BracketError);           // target outside inversion bracket
INEQ_DEFINE_ERROR(DimensionError);         // dimension out of range
INEQ_DEFINE_ERROR(DomainError);            // argument outside validity interval
INEQ_DEFINE_ERROR(RangeError);             // exponent/parameter out of range
INEQ_DEFINE_ERROR(NotIntegrable);          // decay too slow for the volume growth
INEQ_DEFINE_ERROR(MonotoneRequired);       // operation needs a non-increasing profile
INEQ_DEFINE_ERROR(LogArgumentNonpositive); // Dirichlet bracket not positive
INEQ_DEFINE_ERROR(ConditionViolated);      // a required warp condition failed
INEQ_DEFINE_ERROR(NotConvergent);          // limit extrapolation did not stabilize
INEQ_DEFINE_ERROR(BranchMismatch);         // parameter on the wrong formula branch
INEQ_DEFINE_ERROR(ParseError);             // bad mini-grammar or config input

#undef INEQ_DEFINE_ERROR

} // namespace ineq
