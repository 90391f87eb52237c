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

#include "innermerit/service.hpp"

#include <httplib.h>

#include <algorithm>

#include "innermerit/error.hpp"
#include "innermerit/honor.hpp"
#include "innermerit/util.hpp"

namespace innermerit {

namespace {

HttpResponse json_response(int status, const nlohmann::json& body) {
  HttpResponse r;
  r.status = status;
  r.body = body.dump();
  r.headers["Content-Type"] = "application/json";
  return r;
}

HttpResponse error_response(ErrorCode code, const std::string& message) {
  return json_response(http_status_for(code),
                       {{"error", to_string(code)}, {"message", message}});
}

HttpResponse plain_error(int status, const std::string& error, const std::string& message) {
  return json_response(status, {{"error", error}, {"message", message}});
}

std::optional<std::string> query(const HttpRequest& r, const char* name) {
  auto it = r.query.find(name);
  if (it == r.query.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> segments_of(const std::string& path) {
  std::vector<std::string> out;
  for (auto& s : split(path, '/')) {
    if (!s.empty()) out.push_back(s);
  }
  return out;
}

bool member_may(const std::string& op) { return op != "cycle.finalize"; }

}  // namespace

TokenTable parse_tokens(const std::string& text) {
  TokenTable tokens;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::vector<std::string> parts;
    for (auto& p : split(line, ' ')) {
      if (!p.empty()) parts.push_back(p);
    }
    if (parts.size() != 3 || (parts[1] != "member" && parts[1] != "admin")) {
      fail(ErrorCode::InvalidConfig,
           "token file line " + std::to_string(line_no) + ": expected `token member|admin actor`");
    }
    if (!tokens.emplace(parts[0], Actor{parts[2], parts[1], "http"}).second) {
      fail(ErrorCode::InvalidConfig, "token file line " + std::to_string(line_no) + ": duplicate token");
    }
  }
  return tokens;
}

TokenTable load_tokens(const std::string& path) { return parse_tokens(read_file(path)); }

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound:
    case ErrorCode::NoSnapshot:
      return 404;
    case ErrorCode::NotAuthorized:
      return 403;
    case ErrorCode::IllegalPhaseTransition:
    case ErrorCode::IllegalLadderStep:
    case ErrorCode::DuplicateVote:
    case ErrorCode::ProposalPending:
    case ErrorCode::ProposalClosed:
    case ErrorCode::ProjectNotEligible:
    case ErrorCode::FrozenPeriod:
    case ErrorCode::DuplicateCycle:
    case ErrorCode::IllegalCycleState:
    case ErrorCode::NoEligibleCandidates:
    case ErrorCode::TooManyRecipients:
    case ErrorCode::ScopeMismatch:
    case ErrorCode::DuplicateRecipient:
    case ErrorCode::KnightWithoutStar:
    case ErrorCode::PoolMismatch:
    case ErrorCode::BudgetExhausted:
    case ErrorCode::DuplicateId:
      return 409;
    case ErrorCode::CorruptLog:
    case ErrorCode::IoFailure:
      return 500;
    default:
      return 400;
  }
}

HonorService::HonorService(Engine& engine, TokenTable tokens)
    : engine_(engine), tokens_(std::move(tokens)) {}

HttpResponse HonorService::handle(const HttpRequest& request) {
  auto segments = segments_of(request.path);
  try {
    if (request.method == "GET") {
      HttpResponse r = get(segments, request);
      if (r.status != 200) return r;
      std::string etag = "\"" + sha256_hex(r.body) + "\"";
      r.headers["ETag"] = etag;
      auto inm = request.headers.find("if-none-match");
      if (inm != request.headers.end() && inm->second == etag) {
        r.status = 304;
        r.body.clear();
        r.headers.erase("Content-Type");
      }
      return r;
    }
    if (request.method == "POST") return post(segments, request);
    return plain_error(405, "MethodNotAllowed", request.method);
  } catch (const Error& e) {
    return error_response(e.code(), e.message());
  }
}

HttpResponse HonorService::get(const std::vector<std::string>& s, const HttpRequest& request) {
  auto as_of = [&] { return resolve_as_of(query(request, "as_of"), engine_.now()); };
  auto ok = [](const nlohmann::json& j) { return json_response(200, j); };
  std::size_t n = s.size();
  if (n == 1 && s[0] == "wall") {
    Timestamp t = as_of();
    return ok(engine_.read([&](const EngineState& st) { return wall_of_honor(st, t); }));
  }
  if (n == 2 && s[0] == "profile") {
    Timestamp t = as_of();
    return ok(engine_.read([&](const EngineState& st) { return contributor_profile(st, s[1], t); }));
  }
  if (n == 1 && s[0] == "leaderboard") {
    Timestamp t = as_of();
    std::optional<std::size_t> top;
    if (auto q = query(request, "top")) {
      std::int64_t v = 0;
      try {
        v = parse_int64(*q, "top");
      } catch (const Error&) {
        fail(ErrorCode::InvalidArgument, "top must be an integer");
      }
      if (v < 0) fail(ErrorCode::InvalidArgument, "top must not be negative");
      top = static_cast<std::size_t>(v);
    }
    return ok(engine_.read([&](const EngineState& st) { return leaderboard(st, t, top); }));
  }
  if (n == 2 && s[0] == "maturity") {
    Period p = Period::parse_or_throw(s[1]);
    return ok(engine_.read([&](const EngineState& st) { return maturity_ranking(st, p); }));
  }
  if (n == 1 && s[0] == "cycles") {
    return ok(engine_.read([&](const EngineState& st) { return cycle_index(st); }));
  }
  if (n == 3 && s[0] == "cycles") {
    CycleKey key{parse_award_kind(s[1]), Period::parse_or_throw(s[2])};
    return ok(engine_.read([&](const EngineState& st) { return cycle_detail(st, key); }));
  }
  if (n == 2 && s[0] == "budget") {
    int year = static_cast<int>(Period::parse_or_throw(s[1]).year());
    if (Period::parse_or_throw(s[1]).is_month()) fail(ErrorCode::InvalidArgument, "expected a year");
    return ok(engine_.read([&](const EngineState& st) { return budget_report(st, year); }));
  }
  if (n == 1 && s[0] == "roles") {
    return ok(engine_.read([&](const EngineState& st) {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& [id, p] : st.roles.proposals()) list.push_back(to_json(p));
      return nlohmann::json{{"proposals", list}};
    }));
  }
  return plain_error(404, "NotFound", "no route for GET " + request.path);
}

HttpResponse HonorService::post(const std::vector<std::string>& s, const HttpRequest& request) {
  std::size_t n = s.size();
  nlohmann::json path_fields = nlohmann::json::object();
  std::string op;
  if (n == 4 && s[0] == "cycles" &&
      (s[3] == "open" || s[3] == "slate" || s[3] == "decide" || s[3] == "finalize")) {
    op = "cycle." + s[3];
    path_fields = {{"kind", s[1]}, {"period", s[2]}};
  } else if (n == 2 && s[0] == "roles" && s[1] == "propose") {
    op = "role.propose";
  } else if (n == 3 && s[0] == "roles" && s[2] == "vote") {
    op = "role.vote";
    path_fields = {{"proposal_id", s[1]}};
  } else if (n == 2 && s[0] == "maturity" && s[1] == "assess") {
    op = "maturity.assess";
  } else {
    return plain_error(404, "NotFound", "no route for POST " + request.path);
  }
  std::string target = request.path;

  Actor actor{"anonymous", "none", "http"};
  auto auth = request.headers.find("authorization");
  const std::string bearer = "Bearer ";
  if (auth == request.headers.end() || auth->second.rfind(bearer, 0) != 0 ||
      !tokens_.count(auth->second.substr(bearer.size()))) {
    engine_.audit(actor, op, target, "Unauthenticated");
    return plain_error(401, "Unauthenticated", "a valid bearer token is required");
  }
  actor = tokens_.at(auth->second.substr(bearer.size()));
  if (actor.role != "admin" && !member_may(op)) {
    engine_.audit(actor, op, target, "Forbidden");
    return plain_error(403, "Forbidden", op + " needs the admin role");
  }

  nlohmann::json command;
  if (trim(request.body).empty()) {
    command = nlohmann::json::object();
  } else {
    command = nlohmann::json::parse(request.body, nullptr, false);
  }
  if (!command.is_object()) {
    engine_.audit(actor, op, target, "InvalidArgument");
    return error_response(ErrorCode::InvalidArgument, "request body must be a JSON object");
  }
  command.update(path_fields);
  command["op"] = op;
  CommandResult result = engine_.execute(command, actor);
  nlohmann::json body = {{"result", result.body}, {"audit_id", result.audit_id}};
  if (result.body.is_object() && result.body.contains("warning")) {
    body["warning"] = result.body["warning"];
  }
  return json_response(200, body);
}

void HonorService::mount(httplib::Server& server) {
  auto bridge = [this](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    for (const auto& [k, v] : req.headers) r.headers[fold_case(k)] = v;
    r.body = req.body;
    HttpResponse out = handle(r);
    res.status = out.status;
    for (const auto& [k, v] : out.headers) {
      if (k != "Content-Type") res.set_header(k, v);
    }
    auto ct = out.headers.find("Content-Type");
    res.set_content(out.body, ct == out.headers.end() ? "application/json" : ct->second);
  };
  server.Get(".*", bridge);
  server.Post(".*", bridge);
}

void serve(Engine& engine, const TokenTable& tokens, const std::string& addr) {
  auto colon = addr.rfind(':');
  if (colon == std::string::npos) fail(ErrorCode::InvalidArgument, "address must be host:port");
  std::string host = addr.substr(0, colon);
  int port = static_cast<int>(parse_int64(addr.substr(colon + 1), "port"));
  HonorService service(engine, tokens);
  httplib::Server server;
  service.mount(server);
  if (!server.listen(host, port)) fail(ErrorCode::IoFailure, "cannot listen on " + addr);
}

}  // namespace innermerit
