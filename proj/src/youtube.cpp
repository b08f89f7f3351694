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

#include "emokit/youtube.hpp"

#include <cstdlib>

#include "json.hpp"

namespace emokit {
namespace youtube {

namespace {

using nlohmann::json;

constexpr const char* kApiBase = "https://www.googleapis.com/youtube/v3";
// The search endpoint caps maxResults at 50 per page.
constexpr int kMaxPageSize = 50;

std::string url_encode(const std::string& s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (const char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    const bool safe = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                      (c >= '0' && c <= '9') || c == '-' || c == '_' ||
                      c == '.' || c == '~';
    if (safe) {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

json fetch_json(HttpClient& http, const std::string& url,
                const std::string& what) {
  const HttpResponse r = http.get(url);
  if (r.status == 403) {
    throw IoError("YouTube API refused the " + what +
                  " request (HTTP 403): quota exhausted or key rejected");
  }
  if (r.status != 200) {
    throw IoError("YouTube API " + what + " request failed with HTTP " +
                  std::to_string(r.status));
  }
  try {
    return json::parse(r.body);
  } catch (const json::exception& e) {
    throw ParseError("YouTube " + what + " response is not valid JSON: " +
                     e.what());
  }
}

const json& require(const json& j, const char* key, const std::string& what) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError("YouTube " + what + " response lacks field \"" + key +
                     "\"");
  }
  return *it;
}

}  // namespace

void YouTubeQuery::validate() const {
  if (channel_ids.empty()) {
    throw ValidationError("query needs at least one channel id");
  }
  if (max_videos < 1) throw ValidationError("max_videos must be >= 1");
  if (api_key_env.empty()) throw ValidationError("api_key_env must be named");
}

std::vector<MediaRecord> fetch_channel_videos(const YouTubeQuery& query,
                                              HttpClient& http) {
  query.validate();
  const char* key = std::getenv(query.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw ConfigError("environment variable " + query.api_key_env +
                      " is not set; it must hold the YouTube API key");
  }

  std::vector<MediaRecord> records;
  for (const auto& channel : query.channel_ids) {
    const int remaining = query.max_videos - static_cast<int>(records.size());
    if (remaining <= 0) break;

    const std::string search_url =
        std::string(kApiBase) + "/search?part=id&type=video&order=date" +
        "&channelId=" + url_encode(channel) +
        "&maxResults=" + std::to_string(std::min(remaining, kMaxPageSize)) +
        "&key=" + url_encode(key);
    const json search = fetch_json(http, search_url, "search");

    std::vector<std::string> video_ids;
    for (const auto& item : require(search, "items", "search")) {
      const json& id = require(item, "id", "search");
      video_ids.push_back(require(id, "videoId", "search").get<std::string>());
      if (static_cast<int>(video_ids.size()) >= remaining) break;
    }
    if (video_ids.empty()) continue;

    std::string joined;
    for (const auto& v : video_ids) {
      if (!joined.empty()) joined.push_back(',');
      joined += url_encode(v);
    }
    const std::string videos_url = std::string(kApiBase) +
                                   "/videos?part=snippet&id=" + joined +
                                   "&key=" + url_encode(key);
    const json details = fetch_json(http, videos_url, "videos");

    for (const auto& item : require(details, "items", "videos")) {
      MediaRecord r;
      r.id = require(item, "id", "videos").get<std::string>();
      const json& snippet = require(item, "snippet", "videos");
      r.title = snippet.value("title", "");
      r.description = snippet.value("description", "");
      r.category = snippet.value("categoryId", "");
      records.push_back(std::move(r));
      if (static_cast<int>(records.size()) >= query.max_videos) break;
    }
  }
  return records;
}

}  // namespace youtube
}  // namespace emokit
