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

// YouTube Data API v3 metadata ingestion behind an injectable HTTP
// client, so everything above the socket is testable offline.

#ifndef EMOKIT_YOUTUBE_HPP_
#define EMOKIT_YOUTUBE_HPP_

#include <memory>
#include <string>
#include <vector>

#include "emokit/common.hpp"
#include "emokit/datamodel.hpp"

namespace emokit {
namespace youtube {

// Name of the environment variable holding the API key by default.
inline constexpr const char* kDefaultApiKeyEnv = "EMO_YT_API_KEY";

struct HttpResponse {
  int status = 0;
  std::string body;
};

class HttpClient {
 public:
  virtual ~HttpClient() = default;
  virtual HttpResponse get(const std::string& url) = 0;
};

// TLS client over the real network. Requires the binary to be built
// with OpenSSL; throws ConfigError otherwise.
std::unique_ptr<HttpClient> make_real_http_client();

struct YouTubeQuery {
  std::vector<std::string> channel_ids;
  int max_videos = 50;  // total across all channels
  std::string api_key_env = kDefaultApiKeyEnv;

  void validate() const;
};

// Lists recent videos per channel (search endpoint), then resolves
// title/description/category (videos endpoint). audio_path stays empty:
// audio acquisition is outside this tool. HTTP 403 surfaces as an
// IoError naming quota/auth; a missing key env var is a ConfigError;
// malformed payloads are ParseErrors.
std::vector<MediaRecord> fetch_channel_videos(const YouTubeQuery& query,
                                              HttpClient& http);

}  // namespace youtube
}  // namespace emokit

#endif  // EMOKIT_YOUTUBE_HPP_
