// Copyright 2026 The revjudge Authors.
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

#include "revjudge/service/service.h"

#include <charconv>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "revjudge/common/error.h"
#include "revjudge/common/util.h"
#include "revjudge/features/features.h"

namespace revjudge::service {

using nlohmann::ordered_json;

namespace {

Response error_response(int status, std::string_view message) {
  return {status, ordered_json{{"error", message}}.dump()};
}

}  // namespace

std::shared_ptr<const LoadedModel> make_loaded_model(
    experiments::ModelBundle bundle, std::shared_ptr<const text::MetricsToolkit> toolkit) {
  if (!toolkit) throw ConfigurationError("no text resources loaded");
  if (toolkit->fingerprint() != bundle.schema.resource_fingerprint())
    throw ConfigurationError("model was trained with resources " +
                             bundle.schema.resource_fingerprint() + " but " +
                             toolkit->fingerprint() + " are loaded");
  if (toolkit->tokenizer_version() != bundle.schema.tokenizer_version())
    throw ConfigurationError("model tokenizer version differs from this build");
  return std::make_shared<const LoadedModel>(LoadedModel{std::move(bundle), std::move(toolkit)});
}

std::shared_ptr<const LoadedModel> ModelHost::current() const {
  std::lock_guard lock(mu_);
  return model_;
}

void ModelHost::set(std::shared_ptr<const LoadedModel> model) {
  std::lock_guard lock(mu_);
  model_ = std::move(model);
}

void ModelHost::load_file(const std::string& path,
                          std::shared_ptr<const text::MetricsToolkit> toolkit) {
  set(make_loaded_model(experiments::ModelBundle::load_file(path), std::move(toolkit)));
}

std::string prediction_json(const LoadedModel& model, const std::string& s1,
                            const std::string& s2) {
  if (trim(s1).empty()) throw ValidationError("s1 is empty");
  if (trim(s2).empty()) throw ValidationError("s2 is empty");
  if (normalize_for_equality(s1) == normalize_for_equality(s2))
    throw ValidationError("no revision detected");
  RevisionPair pair;
  pair.id = "request";
  pair.s1 = s1;
  pair.s2 = s2;
  auto analysis = features::analyze(pair, *model.toolkit);
  auto explained = experiments::predict_with_explanation(model.bundle, analysis);

  ordered_json top = ordered_json::array();
  for (const auto& c : explained.top)
    top.push_back({{"feature", c.feature}, {"value", c.value}, {"importance", c.importance}});
  return ordered_json{{"label", std::string(label_name(explained.prediction.label))},
                      {"probability", explained.prediction.probability},
                      {"top_contributions", top},
                      {"model_id", model.bundle.model_id()}}
      .dump();
}

Response handle_predict(const ModelHost& host, std::string_view request_body) {
  auto model = host.current();
  if (!model) return error_response(503, "no model loaded");
  nlohmann::json request;
  try {
    request = nlohmann::json::parse(request_body);
  } catch (const nlohmann::json::exception&) {
    return error_response(400, "request body is not JSON");
  }
  if (!request.is_object()) return error_response(400, "request body must be an object");
  for (const char* key : {"s1", "s2"})
    if (!request.contains(key) || !request[key].is_string())
      return error_response(422, std::string(key) + " must be a string");
  try {
    return {200, prediction_json(*model, request["s1"].get<std::string>(),
                                 request["s2"].get<std::string>())};
  } catch (const ValidationError& e) {
    return error_response(422, e.what());
  } catch (const Error& e) {
    return error_response(500, e.what());
  }
}

Response handle_health(const ModelHost& host) {
  auto model = host.current();
  if (!model) return {503, ordered_json{{"status", "unavailable"}}.dump()};
  return {200, ordered_json{{"status", "ok"},
                            {"model_id", model->bundle.model_id()},
                            {"schema_version", model->bundle.schema.fingerprint()}}
                   .dump()};
}

struct Server::Impl {
  Impl(ModelHost& h, ServerOptions o) : host(h), options(std::move(o)) {}
  ModelHost& host;
  ServerOptions options;
  httplib::Server http;
};

Server::Server(ModelHost& host, ServerOptions options)
    : impl_(std::make_unique<Impl>(host, std::move(options))) {
  auto& http = impl_->http;
  if (!impl_->options.cors_origin.empty()) {
    http.set_default_headers({{"Access-Control-Allow-Origin", impl_->options.cors_origin},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Vary", "Origin"}});
    http.Options(R"(/api/v1/.*)",
                 [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  }
  Impl* impl = impl_.get();
  http.Post("/api/v1/predict", [impl](const httplib::Request& req, httplib::Response& res) {
    auto r = handle_predict(impl->host, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
  http.Get("/api/v1/health", [impl](const httplib::Request&, httplib::Response& res) {
    auto r = handle_health(impl->host);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::listen_after_bind() { return impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_ && impl_->http.is_running()) impl_->http.stop();
}

void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

std::pair<std::string, int> parse_bind(std::string_view bind) {
  auto colon = bind.rfind(':');
  if (colon == std::string_view::npos || colon == 0)
    throw ArgumentError("bind address must look like host:port");
  int port = -1;
  auto digits = bind.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || port < 0 || port > 65535)
    throw ArgumentError("bad port in bind address '" + std::string(bind) + "'");
  return {std::string(bind.substr(0, colon)), port};
}

}  // namespace revjudge::service
