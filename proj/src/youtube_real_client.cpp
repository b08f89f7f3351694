// Copyright 2026 The Emokit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Live TLS client, isolated in its own translation unit so the rest of
// the library builds without OpenSSL when EMOKIT_WITH_TLS is off.

#include "emokit/youtube.hpp"

#ifdef EMOKIT_WITH_TLS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#endif

namespace emokit {
namespace youtube {

#ifdef EMOKIT_WITH_TLS

namespace {

class RealHttpClient : public HttpClient {
 public:
  HttpResponse get(const std::string& url) override {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
      throw ValidationError("url lacks a scheme: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string origin =
        path_start == std::string::npos ? url : url.substr(0, path_start);
    const std::string path =
        path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(30);
    const httplib::Result res = client.Get(path);
    if (!res) {
      throw IoError("request to " + origin +
                    " failed: " + httplib::to_string(res.error()));
    }
    return HttpResponse{res->status, res->body};
  }
};

}  // namespace

std::unique_ptr<HttpClient> make_real_http_client() {
  return std::make_unique<RealHttpClient>();
}

#else

std::unique_ptr<HttpClient> make_real_http_client() {
  throw ConfigError(
      "this build has no TLS support; rebuild with OpenSSL to fetch from "
      "the live API");
}

#endif

}  // namespace youtube
}  // namespace emokit
