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

#ifndef PARASTAT_SRC_SPECIAL_DETAIL_HPP
#define PARASTAT_SRC_SPECIAL_DETAIL_HPP

namespace parastat::special::detail {

/// Gamma on the whole real line except the poles (reflection for x <= 0).
double gamma_any(double x);

/// 1/Gamma(x), zero at the poles.
double rgamma_any(double x);

} // namespace parastat::special::detail

#endif // PARASTAT_SRC_SPECIAL_DETAIL_HPP
