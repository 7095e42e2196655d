#ifndef HAMPERC_ERRORS_HPP
#define HAMPERC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hamperc {

// Exit status 1 in the CLI.
class InputDomainError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Violated precondition of an operation (e.g. merging projections that are
// too far apart). Reported like an input-domain error.
class PreconditionError : public InputDomainError
{
  public:
    using InputDomainError::InputDomainError;
};

class NotFoundError : public InputDomainError
{
  public:
    using InputDomainError::InputDomainError;
};

// Instance exceeds what an exhaustive or packed algorithm can handle.
// Exit status 2 in the CLI.
class CapabilityError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// A computation ran but produced an unusable answer (bracket failure etc).
// Exit status 3 in the CLI.
class DiagnosticError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace hamperc

#endif
