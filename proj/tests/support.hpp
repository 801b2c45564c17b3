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

#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kpa/corpus.hpp"
#include "kpa/error.hpp"

namespace kpa::testing {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("kpa-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& file, std::string_view text) {
  std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Runs `body` and returns the kind and message of the kpa::Error it throws.
struct Caught {
  bool thrown = false;
  ErrorKind kind = ErrorKind::internal;
  std::string message;
};

inline Caught catch_error(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return Caught{true, e.kind(), e.what()};
  }
  return {};
}

// One topic "t", key points k0..k{n-1}; `groups[i]` lists the key point index
// of argument a<i> (or -1 for an unlabeled argument). Texts are given or
// default to "argument <i>".
inline Corpus labeled_corpus(const std::vector<int>& groups, std::size_t n_key_points,
                             const std::vector<std::string>& texts = {}) {
  std::vector<Topic> topics{{"t", "Topic"}};
  std::vector<KeyPoint> kps;
  for (std::size_t k = 0; k < n_key_points; ++k) {
    kps.push_back({"k" + std::to_string(k), "t", "key point " + std::to_string(k), 1, false});
  }
  std::vector<Argument> args;
  std::vector<GoldLabel> labels;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::string id = "a" + std::to_string(i);
    const std::string text = i < texts.size() ? texts[i] : "argument " + std::to_string(i);
    args.push_back({id, "t", text, 1, std::nullopt, std::nullopt});
    for (std::size_t k = 0; k < n_key_points; ++k) {
      labels.push_back({id, kps[k].id, groups[i] == static_cast<int>(k) ? 1 : 0});
    }
  }
  return Corpus(std::move(topics), std::move(args), std::move(kps), std::move(labels));
}

}  // namespace kpa::testing
