#pragma once

#include <stdexcept>
#include <string>

namespace cylpeak {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller passed parameters outside the documented domain.
class DomainError : public Error { public: using Error::Error; };
class ScaleError : public DomainError { public: using DomainError::DomainError; };
class ContourError : public DomainError { public: using DomainError::DomainError; };
class PoleError : public DomainError { public: using DomainError::DomainError; };
class EmptySample : public DomainError { public: using DomainError::DomainError; };

// A numerical procedure failed to reach its tolerance.
class NumericalError : public Error { public: using Error::Error; };
class NonConvergent : public NumericalError { public: using NumericalError::NumericalError; };
class QuadratureFailure : public NumericalError { public: using NumericalError::NumericalError; };
class PrecisionError : public NumericalError { public: using NumericalError::NumericalError; };
class TailNotDecaying : public NumericalError { public: using NumericalError::NumericalError; };
class BudgetExceeded : public NumericalError { public: using NumericalError::NumericalError; };

}  // namespace cylpeak
