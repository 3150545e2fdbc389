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

#include "cbdc/amount.h"

#include <charconv>
#include <cstdio>

namespace cbdc {

std::string Amount::to_string() const {
  std::uint64_t mag = minor_ < 0 ? 0 - static_cast<std::uint64_t>(minor_)
                                 : static_cast<std::uint64_t>(minor_);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%llu.%02llu", minor_ < 0 ? "-" : "",
                static_cast<unsigned long long>(mag / 100),
                static_cast<unsigned long long>(mag % 100));
  return buf;
}

std::optional<Amount> Amount::parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t dot = text.find('.');
  std::string whole = text.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
  if (whole.empty() || frac.size() > 2) return std::nullopt;
  while (frac.size() < 2) frac.push_back('0');
  std::int64_t w = 0, f = 0;
  auto r1 = std::from_chars(whole.data(), whole.data() + whole.size(), w);
  auto r2 = std::from_chars(frac.data(), frac.data() + frac.size(), f);
  if (r1.ec != std::errc() || r1.ptr != whole.data() + whole.size() ||
      r2.ec != std::errc() || r2.ptr != frac.data() + frac.size() || w < 0 ||
      f < 0) {
    return std::nullopt;
  }
  std::int64_t minor;
  if (__builtin_mul_overflow(w, 100, &minor) ||
      __builtin_add_overflow(minor, f, &minor)) {
    return std::nullopt;
  }
  return Amount(minor);
}

}  // namespace cbdc
