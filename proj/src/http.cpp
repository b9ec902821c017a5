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

#include "docrag/http.hpp"

#include "docrag/error.hpp"
#include "httplib.h"

namespace docrag::http {
namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw InvalidArgument("endpoint URL needs a scheme: '" + url + "'");
  }
  if (url.compare(0, scheme_end, "http") != 0) {
    throw InvalidArgument("only http:// endpoints are supported: '" + url + "'");
  }
  const auto path_begin = url.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) return {url, "/"};
  return {url.substr(0, path_begin), url.substr(path_begin)};
}

}  // namespace

nlohmann::json post_json(const std::string& url, const nlohmann::json& body,
                         std::chrono::seconds timeout) {
  const auto ep = split_url(url);
  httplib::Client client(ep.origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  auto res = client.Post(ep.path, body.dump(), "application/json");
  if (!res) {
    throw RetriableError("POST " + url + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status >= 500) {
    throw RetriableError("POST " + url + " returned " + std::to_string(res->status));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error("POST " + url + " returned " + std::to_string(res->status));
  }
  auto j = nlohmann::json::parse(res->body, nullptr, false);
  if (j.is_discarded()) throw Error("POST " + url + " returned a non-JSON body");
  return j;
}

}  // namespace docrag::http
