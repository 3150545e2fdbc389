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

#include "cbdc/sim/bus.h"

#include <algorithm>

#include "cbdc/wire/messages.h"

namespace cbdc::sim {

namespace {

std::string describe(ByteView msg) {
  std::string type = "?";
  if (msg.size() >= wire::kEnvelopeHeaderSize) {
    type = std::string(
        wire::msg_type_name(static_cast<wire::MsgType>(msg[1])));
  }
  return type + " " + std::to_string(msg.size()) + "B " + short_hash(msg);
}

}  // namespace

std::string short_hash(ByteView data) {
  Hash256 h = sha256(data);
  return to_hex(ByteView(h.data(), 6));
}

void EventLog::add(std::int64_t t_ms, std::string_view actor,
                   std::string_view event, std::string_view detail) {
  std::string line = "t=" + std::to_string(t_ms) + " " + std::string(actor) +
                     " " + std::string(event);
  if (!detail.empty()) {
    line += " ";
    line += detail;
  }
  lines_.push_back(std::move(line));
}

std::string EventLog::text() const {
  std::string out;
  for (const auto& l : lines_) {
    out += l;
    out += '\n';
  }
  return out;
}

std::vector<std::string> EventLog::steps() const {
  std::vector<std::string> out;
  for (const auto& l : lines_) {
    auto first = l.find(' ');
    auto second = l.find(' ', first + 1);
    if (second == std::string::npos) continue;
    auto third = l.find(' ', second + 1);
    std::string event = l.substr(second + 1, third - second - 1);
    if (event.size() == 2 && (event[0] == 'W' || event[0] == 'S') &&
        event[1] >= '1' && event[1] <= '9') {
      out.push_back(event);
    }
  }
  return out;
}

Bus::Bus(VirtualClock& clock, FaultModel faults, Drbg fault_rng, EventLog* log)
    : clock_(clock), faults_(faults), rng_(std::move(fault_rng)), log_(log) {}

void Bus::bind(const std::string& endpoint, net::Handler handler) {
  handlers_[endpoint] = std::move(handler);
}

std::int64_t Bus::latency() {
  std::int64_t lo = faults_.latency_min_ms;
  std::int64_t hi = std::max(lo, faults_.latency_max_ms);
  if (hi == lo) return lo;
  return lo + static_cast<std::int64_t>(
                  rng_.uniform(static_cast<std::uint64_t>(hi - lo + 1)));
}

void Bus::log(std::string_view event, std::string detail) {
  if (!log_) return;
  std::string_view actor = callers_.empty() ? "driver" : callers_.back();
  log_->add(clock_.now_ms(), actor, event, detail);
}

Result<Bytes> Bus::call(const std::string& endpoint, const std::string& path,
                        ByteView request) {
  auto it = handlers_.find(endpoint);
  if (it == handlers_.end()) {
    return make_error(ErrorCode::kUnavailable, "no endpoint " + endpoint);
  }
  ++stats_.messages;
  stats_.bytes += request.size();
  stats_.largest_message = std::max(stats_.largest_message, request.size());
  log("send", endpoint + path + " " + describe(request));
  if (faults_.loss > 0 && rng_.uniform_double() < faults_.loss) {
    ++stats_.lost;
    log("lost", "request to " + endpoint + path);
    clock_.advance_ms(faults_.timeout_ms);
    return make_error(ErrorCode::kUnavailable, "request lost");
  }
  clock_.advance_ms(latency());
  Bytes reply;
  {
    Actor scope(*this, endpoint);
    reply = it->second(path, request);
  }
  if (faults_.duplication > 0 && rng_.uniform_double() < faults_.duplication) {
    ++stats_.duplicated;
    log("duplicate", endpoint + path);
    Actor scope(*this, endpoint);
    it->second(path, request);
  }
  ++stats_.messages;
  stats_.bytes += reply.size();
  stats_.largest_message = std::max(stats_.largest_message, reply.size());
  if (faults_.loss > 0 && rng_.uniform_double() < faults_.loss) {
    ++stats_.lost;
    log("lost", "reply from " + endpoint + path);
    clock_.advance_ms(faults_.timeout_ms);
    return make_error(ErrorCode::kUnavailable, "reply lost");
  }
  clock_.advance_ms(latency());
  log("recv", endpoint + path + " " + describe(reply));
  return reply;
}

}  // namespace cbdc::sim
