// Copyright 2026 The InnerMerit Authors
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

#include <map>
#include <string>

#include "innermerit/engine.hpp"
#include "innermerit/error.hpp"

namespace httplib {
class Server;
}

namespace innermerit {

// Bearer token -> actor. Token files hold one `token role actor-id` triple
// per line; roles are `member` or `admin`; `#` starts a comment.
using TokenTable = std::map<std::string, Actor>;
TokenTable parse_tokens(const std::string& text);
TokenTable load_tokens(const std::string& path);

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

// Status for an engine error code.
int http_status_for(ErrorCode code);

// Routes:
//   GET  /wall?as_of=  /profile/{id}?as_of=  /leaderboard?as_of=&top=
//        /maturity/{YYYY-MM}  /cycles  /cycles/{kind}/{period}
//        /budget/{year}  /roles
//   POST /cycles/{kind}/{period}/{open|slate|decide|finalize}
//        /roles/propose  /roles/{id}/vote  /maturity/assess
// Reads are open. Commands need `Authorization: Bearer <token>`: members may
// open, slate, decide, propose, vote and assess; finalizing needs admin.
class HonorService {
 public:
  HonorService(Engine& engine, TokenTable tokens);

  HttpResponse handle(const HttpRequest& request);
  void mount(httplib::Server& server);

 private:
  HttpResponse get(const std::vector<std::string>& segments, const HttpRequest& request);
  HttpResponse post(const std::vector<std::string>& segments, const HttpRequest& request);

  Engine& engine_;
  TokenTable tokens_;
};

// Binds `addr` (`host:port`) and serves until the process is stopped.
// Throws IoFailure when the address cannot be bound.
void serve(Engine& engine, const TokenTable& tokens, const std::string& addr);

}  // namespace innermerit
