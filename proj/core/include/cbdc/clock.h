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

#ifndef CBDC_CLOCK_H_
#define CBDC_CLOCK_H_

#include <atomic>
#include <cstdint>

namespace cbdc {

// Seconds since the Unix epoch.
using Timestamp = std::int64_t;

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp now() const = 0;
};

class SystemClock final : public Clock {
 public:
  Timestamp now() const override;
};

// Virtual clock driven explicitly by tests and the simulator. Time only
// moves forward.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(Timestamp start = 0) : now_(start) {}
  Timestamp now() const override { return now_.load(); }
  void set(Timestamp t);
  void advance(Timestamp seconds) { set(now_.load() + seconds); }

 private:
  std::atomic<Timestamp> now_;
};

}  // namespace cbdc

#endif  // CBDC_CLOCK_H_
