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

#include "docrag/llm.hpp"

#include "docrag/error.hpp"
#include "docrag/http.hpp"
#include "json.hpp"

namespace docrag {

std::string HttpLlmClient::complete(const std::string& prompt) {
  const auto res = http::post_json(url_, {{"prompt", prompt}, {"max_tokens", max_tokens_}});
  if (!res.is_object() || !res.contains("completion") || !res["completion"].is_string()) {
    throw Error("LLM reply lacks a string 'completion'");
  }
  return res["completion"].get<std::string>();
}

}  // namespace docrag
