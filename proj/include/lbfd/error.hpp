#ifndef LBFD_ERROR_HPP
#define LBFD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lbfd {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input from the user: malformed files, missing bindings, shape errors.
// The CLI maps these to exit code 1.
struct UserError : Error {
  using Error::Error;
};

// A symbolic invariant that must hold by construction failed (e.g. the
// annihilation check before emitting a finite-difference scheme).
// The CLI maps these to exit code 2.
struct InternalError : Error {
  using Error::Error;
};

// A numerical run blew past the divergence guard. Exit code 3.
struct DivergenceError : Error {
  using Error::Error;
};

}  // namespace lbfd

#endif
