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

#ifndef PARASTAT_TYPES_HPP
#define PARASTAT_TYPES_HPP

#include <stdexcept>
#include <string>

namespace parastat {

/// Order p of the parastatistics family. p = 1 is the ordinary boson/fermion.
class ParaOrder {
public:
    explicit ParaOrder(int p) : p_(p)
    {
        if (p < 1)
            throw std::domain_error("ParaOrder: p must be >= 1, got " + std::to_string(p));
    }

    int value() const noexcept { return p_; }
    double real() const noexcept { return static_cast<double>(p_); }
    /// p/2, the index offset that shows up in every Bessel order.
    double half() const noexcept { return 0.5 * p_; }

    friend bool operator==(ParaOrder, ParaOrder) = default;

private:
    int p_;
};

enum class Parity { kEven, kOdd };

inline const char* to_string(Parity parity)
{
    return parity == Parity::kEven ? "even" : "odd";
}

/// Number-state label n. The parity is always derived from n.
class Occupation {
public:
    explicit Occupation(long n) : n_(n)
    {
        if (n < 0)
            throw std::domain_error("Occupation: n must be >= 0, got " + std::to_string(n));
    }

    long value() const noexcept { return n_; }
    Parity parity() const noexcept { return (n_ % 2 == 0) ? Parity::kEven : Parity::kOdd; }
    bool is_even() const noexcept { return n_ % 2 == 0; }
    /// N in n = 2N (even) or n = 2N + 1 (odd).
    long pair_index() const noexcept { return n_ / 2; }

    friend bool operator==(Occupation, Occupation) = default;

private:
    long n_;
};

} // namespace parastat

#endif // PARASTAT_TYPES_HPP
