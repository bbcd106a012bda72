#pragma once

#include <stdexcept>
#include <string>

namespace cpkit {

// Base class for all library errors. The CLI maps subclasses to exit codes:
// ParseError -> 3 (bad input data), everything else -> 4 (model/numerical).
class CpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CPKIT_DEFINE_ERROR(Name)                \
    class Name : public CpError {               \
    public:                                     \
        using CpError::CpError;                 \
    }

// Input / data errors.
CPKIT_DEFINE_ERROR(ParseError);

// Graph-kernel errors.
CPKIT_DEFINE_ERROR(UnreachablePairError);
CPKIT_DEFINE_ERROR(NotAnEdgeError);

// Metric / objective errors.
CPKIT_DEFINE_ERROR(DegenerateVarianceError);
CPKIT_DEFINE_ERROR(DegenerateSplitError);
CPKIT_DEFINE_ERROR(EmptyGraphError);

// Generator errors.
CPKIT_DEFINE_ERROR(InvalidProbabilityError);
CPKIT_DEFINE_ERROR(OrderingViolationError);
CPKIT_DEFINE_ERROR(InvalidKernelError);

// Inference errors.
CPKIT_DEFINE_ERROR(SymmetricInitError);
CPKIT_DEFINE_ERROR(LogOfZeroError);
CPKIT_DEFINE_ERROR(InsufficientSamplesError);

// Null-model / testing errors.
CPKIT_DEFINE_ERROR(DegenerateEnsembleError);

// Violated operation precondition (caller error).
CPKIT_DEFINE_ERROR(PreconditionError);

#undef CPKIT_DEFINE_ERROR

}  // namespace cpkit
