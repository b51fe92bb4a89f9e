#pragma once

#include <stdexcept>
#include <string>

namespace zm {

/// Input violates a structural precondition (sizes, shapes, edges of a graph).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters or arguments outside the domain where a formula is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series or quadrature did not reach its tolerance within the configured budget.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SizeMismatch : InvalidInput { using InvalidInput::InvalidInput; };
struct BoxOutOfShape : InvalidInput { using InvalidInput::InvalidInput; };
struct NotAnEdge : InvalidInput { using InvalidInput::InvalidInput; };
struct InvalidSimplexPoint : InvalidInput { using InvalidInput::InvalidInput; };
struct DiagonalPoint : InvalidInput { using InvalidInput::InvalidInput; };
struct EmptySample : InvalidInput { using InvalidInput::InvalidInput; };
struct NonpositiveCoordinate : InvalidInput { using InvalidInput::InvalidInput; };
struct DegenerateParameters : DomainError { using DomainError::DomainError; };
struct PoleError : DomainError { using DomainError::DomainError; };
struct NonIntegrable : DomainError { using DomainError::DomainError; };

}  // namespace zm
