/*
 * Copyright 2026 The parastat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PARASTAT_ERROR_HPP
#define PARASTAT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace parastat {

// Domain violations are reported with std::domain_error, overflow with
// std::overflow_error. Numerical procedures that ran out of budget throw one
// of the types below, which keep the best value found and its error bound.

class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double best_value, double err_est)
        : std::runtime_error(what), best_value_(best_value), err_est_(err_est)
    {
    }

    double best_value() const noexcept { return best_value_; }
    double err_est() const noexcept { return err_est_; }

private:
    double best_value_;
    double err_est_;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Truncated-basis computation whose tail bound could not be met.
class TruncationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace parastat

#endif // PARASTAT_ERROR_HPP
