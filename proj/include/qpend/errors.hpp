// Copyright 2026 the qpend authors
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <stdexcept>
#include <string>

namespace qpend {

// Raised when a numerical safety guard trips, e.g. the integrator step is too
// coarse to resolve the fastest pendulum mode. The CLI maps this to exit
// code 3, distinct from usage (1) and parse (2) failures.
class NumericalGuardError : public std::runtime_error {
 public:
  explicit NumericalGuardError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace qpend
