#pragma once

#include <stdexcept>
#include <string>

namespace monoxp {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed caller input: arity mismatch, out-of-domain value, bad index.
class InputError : public Error {
public:
  using Error::Error;
};

/// A classifier spec file (or constructor arguments) violates a model invariant.
class SpecError : public Error {
public:
  using Error::Error;
};

/// The classifier could not be queried (external process died, bad reply, ...).
class OracleError : public Error {
public:
  using Error::Error;
};

/// Applying the seed already breaks the explainer's corner invariant.
class SeedBreaksInvariant : public Error {
public:
  using Error::Error;
};

/// The classifier is constant over the whole feature box, so no CXp exists.
class NoCxpExists : public Error {
public:
  using Error::Error;
};

/// The enumeration loop observed a state that only a non-monotone oracle can produce.
class InconsistentOracle : public Error {
public:
  using Error::Error;
};

} // namespace monoxp
