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

#include <chrono>
#include <string>

#include "json.hpp"

namespace docrag::http {

// POSTs `body` as JSON to an http:// URL and returns the parsed JSON reply.
// Connection failures and 5xx replies throw RetriableError; other non-2xx
// replies and malformed bodies throw Error.
nlohmann::json post_json(const std::string& url, const nlohmann::json& body,
                         std::chrono::seconds timeout = std::chrono::seconds(120));

}  // namespace docrag::http
