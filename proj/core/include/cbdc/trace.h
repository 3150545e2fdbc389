/*
 * Copyright 2026 The cbdc Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CBDC_TRACE_H_
#define CBDC_TRACE_H_

#include <functional>
#include <string>
#include <string_view>

namespace cbdc {

// Protocol step observer. Withdrawal steps are named "W1".."W9" and
// payment steps "S1".."S9".
using Tracer = std::function<void(std::string_view step, std::string detail)>;

inline void trace(const Tracer& t, std::string_view step,
                  std::string detail = {}) {
  if (t) t(step, std::move(detail));
}

}  // namespace cbdc

#endif  // CBDC_TRACE_H_
