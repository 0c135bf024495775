#pragma once

#include <stdexcept>
#include <string>

namespace vass {

// Exit-code classes used by the CLI: ValidationFailure -> 1, ScopeFailure -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationFailure : public Error {
 public:
  using Error::Error;
};

class ScopeFailure : public Error {
 public:
  using Error::Error;
};

#define VASS_DEFINE_ERROR(Name, Base)    \
  class Name : public Base {             \
   public:                               \
    using Base::Base;                    \
  }

VASS_DEFINE_ERROR(SchemaError, ValidationFailure);
VASS_DEFINE_ERROR(ValidationError, ValidationFailure);
VASS_DEFINE_ERROR(UnknownTransition, ValidationFailure);
VASS_DEFINE_ERROR(IncompleteStrategy, ValidationFailure);
VASS_DEFINE_ERROR(InvalidType, ValidationFailure);
VASS_DEFINE_ERROR(VertexNotInGraph, ValidationFailure);
VASS_DEFINE_ERROR(StrategyMismatch, ValidationFailure);
VASS_DEFINE_ERROR(NotABottomScc, ValidationFailure);
VASS_DEFINE_ERROR(ZeroWitness, ValidationFailure);
VASS_DEFINE_ERROR(DegenerateInput, ValidationFailure);

VASS_DEFINE_ERROR(NotDagLike, ScopeFailure);
VASS_DEFINE_ERROR(PreconditionViolated, ScopeFailure);
VASS_DEFINE_ERROR(TooManyStrategies, ScopeFailure);

VASS_DEFINE_ERROR(NonHomogeneousSystem, Error);

#undef VASS_DEFINE_ERROR

}  // namespace vass
