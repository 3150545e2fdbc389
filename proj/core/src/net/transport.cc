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

#include "cbdc/net/transport.h"

namespace cbdc::net {

void DirectTransport::bind(const std::string& endpoint, Handler handler) {
  std::lock_guard lock(mu_);
  handlers_[endpoint] = std::move(handler);
}

Result<Bytes> DirectTransport::call(const std::string& endpoint,
                                    const std::string& path,
                                    ByteView request) {
  Handler h;
  {
    std::lock_guard lock(mu_);
    auto it = handlers_.find(endpoint);
    if (it == handlers_.end()) {
      return make_error(ErrorCode::kUnavailable, "no endpoint " + endpoint);
    }
    h = it->second;
  }
  return h(path, request);
}

}  // namespace cbdc::net
