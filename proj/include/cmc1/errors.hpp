#pragma once

#include <stdexcept>
#include <string>

namespace cmc1 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define CMC1_ERROR(Name)                                   \
    struct Name : Error {                                  \
        explicit Name(const std::string& msg = #Name)      \
            : Error(std::string(#Name) + ": " + msg) {}    \
    }

CMC1_ERROR(NonUnimodular);
CMC1_ERROR(NonMeromorphicPoint);
CMC1_ERROR(ConstantInput);
CMC1_ERROR(IrregularSingularPoint);
CMC1_ERROR(MissingHopf);
CMC1_ERROR(InvalidOrder);
CMC1_ERROR(UnsupportedGenus);
CMC1_ERROR(SingularPoint);
CMC1_ERROR(StepUnderflow);
CMC1_ERROR(SingularApproach);
CMC1_ERROR(IndeterminateQuotient);
CMC1_ERROR(RelationViolated);
CMC1_ERROR(NoRootFound);
CMC1_ERROR(InconsistentOrders);
CMC1_ERROR(QuadratureNotConverged);
CMC1_ERROR(IrregularEnd);
CMC1_ERROR(ParamOutOfRange);
CMC1_ERROR(PreconditionViolated);
CMC1_ERROR(PeriodsOpen);
CMC1_ERROR(UsageError);

#undef CMC1_ERROR

// Default tolerance for unimodularity/Hermiticity predicates. CMC1_TOL in the
// environment overrides it process-wide.
double default_tol();

}  // namespace cmc1
