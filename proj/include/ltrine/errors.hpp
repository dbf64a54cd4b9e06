// Copyright 2026 The ltrine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ltrine {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Lift parameter in the regime this library does not model (alpha >= 8/9).
class UnsupportedRegimeError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Base for measurement objects that fail a validity check.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Triple weights violate sum(p) = 1 or sum(p sin^2 phi) = 1/3.
class ConstraintViolation : public ValidationError {
  public:
    ConstraintViolation(const std::string &what, double weight_residual,
                        double lift_residual)
        : ValidationError(what), weight_residual_(weight_residual),
          lift_residual_(lift_residual) {}

    [[nodiscard]] double weight_residual() const noexcept { return weight_residual_; }
    [[nodiscard]] double lift_residual() const noexcept { return lift_residual_; }

  private:
    double weight_residual_;
    double lift_residual_;
};

/// Element sum of a POVM differs from the identity.
class IncompletePovm : public ValidationError {
  public:
    IncompletePovm(const std::string &what, double residual)
        : ValidationError(what), residual_(residual) {}

    [[nodiscard]] double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

} // namespace ltrine
