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

#ifndef CBDC_SIM_BUS_H_
#define CBDC_SIM_BUS_H_

#include <atomic>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cbdc/clock.h"
#include "cbdc/net/transport.h"
#include "cbdc/rng.h"

namespace cbdc::sim {

// Simulated time in milliseconds; now() reports whole seconds since
// `start`.
class VirtualClock final : public Clock {
 public:
  explicit VirtualClock(Timestamp start) : start_(start) {}
  Timestamp now() const override { return start_ + ms_.load() / 1000; }
  std::int64_t now_ms() const { return ms_.load(); }
  void advance_ms(std::int64_t ms) { ms_ += ms; }
  void advance_days(std::int64_t days) { ms_ += days * 86'400'000; }

 private:
  Timestamp start_;
  std::atomic<std::int64_t> ms_{0};
};

struct FaultModel {
  double loss = 0.0;
  double duplication = 0.0;
  std::int64_t latency_min_ms = 1;
  std::int64_t latency_max_ms = 1;
  std::int64_t timeout_ms = 1000;
};

class EventLog {
 public:
  void add(std::int64_t t_ms, std::string_view actor, std::string_view event,
           std::string_view detail = {});
  const std::vector<std::string>& lines() const { return lines_; }
  std::string text() const;
  std::vector<std::string> steps() const;

 private:
  std::vector<std::string> lines_;
};

struct BusStats {
  std::uint64_t messages = 0;
  std::uint64_t bytes = 0;
  std::uint64_t lost = 0;
  std::uint64_t duplicated = 0;
  std::size_t largest_message = 0;
};

// Single-threaded discrete-event transport. Every delivery advances the
// virtual clock by a sampled latency; loss and duplication draw from a
// generator separate from the actors'.
class Bus final : public net::Transport {
 public:
  Bus(VirtualClock& clock, FaultModel faults, Drbg fault_rng, EventLog* log);

  void bind(const std::string& endpoint, net::Handler handler) override;
  Result<Bytes> call(const std::string& endpoint, const std::string& path,
                     ByteView request) override;

  void set_faults(const FaultModel& faults) { faults_ = faults; }
  const FaultModel& faults() const { return faults_; }
  const BusStats& stats() const { return stats_; }

  // Names the actor whose calls follow, for the event log.
  class Actor {
   public:
    Actor(Bus& bus, std::string name) : bus_(bus) {
      bus_.callers_.push_back(std::move(name));
    }
    ~Actor() { bus_.callers_.pop_back(); }
    Actor(const Actor&) = delete;
    Actor& operator=(const Actor&) = delete;

   private:
    Bus& bus_;
  };

 private:
  std::int64_t latency();
  void log(std::string_view event, std::string detail);

  VirtualClock& clock_;
  FaultModel faults_;
  Drbg rng_;
  EventLog* log_;
  std::map<std::string, net::Handler> handlers_;
  std::vector<std::string> callers_;
  BusStats stats_;
};

std::string short_hash(ByteView data);

}  // namespace cbdc::sim

#endif  // CBDC_SIM_BUS_H_
