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

#pragma once

#include <chrono>
#include <cstddef>
#include <string>

#include <json.hpp>

namespace kpa {

/// Settings shared by the HTTP embedding and matching backends.
struct RemoteConfig {
  std::string endpoint;  // scheme://host:port
  std::chrono::milliseconds timeout{30'000};
  std::size_t batch_size = 64;
  int retries = 2;
  std::chrono::milliseconds backoff{250};  // doubled after every failed attempt
};

/// POSTs `body` as application/json and returns the parsed response.
/// Connection failures and non-200 statuses are retried `retries` times;
/// exhausting them throws ErrorKind::transport.
nlohmann::json post_json(const RemoteConfig& config, const std::string& path,
                         const nlohmann::json& body);

}  // namespace kpa
