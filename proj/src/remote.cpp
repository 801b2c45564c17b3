// Copyright 2026 The kpa Authors.
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

#include "kpa/remote.hpp"

#include <httplib.h>

#include <thread>

#include "kpa/error.hpp"

namespace kpa {

nlohmann::json post_json(const RemoteConfig& config, const std::string& path,
                         const nlohmann::json& body) {
  if (config.endpoint.empty()) fail(ErrorKind::usage, "remote backend without endpoint");
  const std::string payload = body.dump();
  std::string last_error;
  auto delay = config.backoff;
  for (int attempt = 0; attempt <= config.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    httplib::Client client(config.endpoint);
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config.timeout);
    const auto micros =
        std::chrono::duration_cast<std::chrono::microseconds>(config.timeout - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    const auto res = client.Post(path, payload, "application/json");
    if (!res) {
      last_error = "request failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP status " + std::to_string(res->status);
      continue;
    }
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorKind::transport, config.endpoint + path + ": malformed response: " + e.what());
    }
  }
  fail(ErrorKind::transport, config.endpoint + path + ": " + last_error + " after " +
                                 std::to_string(config.retries + 1) + " attempt(s)");
}

}  // namespace kpa
