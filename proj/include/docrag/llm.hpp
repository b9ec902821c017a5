// Copyright 2026 The docrag Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

namespace docrag {

class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string complete(const std::string& prompt) = 0;
};

// Request {prompt, max_tokens}, response {completion}.
class HttpLlmClient : public LlmClient {
 public:
  explicit HttpLlmClient(std::string url, int max_tokens = 1024)
      : url_(std::move(url)), max_tokens_(max_tokens) {}
  std::string complete(const std::string& prompt) override;

 private:
  std::string url_;
  int max_tokens_;
};

}  // namespace docrag
