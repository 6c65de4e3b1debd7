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

#ifndef REVJUDGE_SERVICE_SERVICE_H_
#define REVJUDGE_SERVICE_SERVICE_H_

#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "revjudge/experiments/pipeline.h"
#include "revjudge/textmetrics/toolkit.h"

namespace revjudge::service {

// A model bundle with the text resources it was trained against.
struct LoadedModel {
  experiments::ModelBundle bundle;
  std::shared_ptr<const text::MetricsToolkit> toolkit;
};

// Throws ConfigurationError if the toolkit's resources differ from the ones
// the schema was built with.
std::shared_ptr<const LoadedModel> make_loaded_model(
    experiments::ModelBundle bundle, std::shared_ptr<const text::MetricsToolkit> toolkit);

// Holds the served model. Requests take a snapshot, so a reload never
// disturbs a request in flight.
class ModelHost {
 public:
  std::shared_ptr<const LoadedModel> current() const;
  void set(std::shared_ptr<const LoadedModel> model);
  void load_file(const std::string& path, std::shared_ptr<const text::MetricsToolkit> toolkit);

 private:
  mutable std::mutex mu_;
  std::shared_ptr<const LoadedModel> model_;
};

// Input rejected before scoring; maps to HTTP 422.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"label","probability","top_contributions":[{"feature","value","importance"}],
// "model_id"}. Shared by the HTTP endpoint and the command line so both
// print identical bytes. Throws ValidationError on an empty side or on
// sentences equal up to whitespace ("no revision detected").
std::string prediction_json(const LoadedModel& model, const std::string& s1,
                            const std::string& s2);

struct Response {
  int status = 200;
  std::string body;
};

Response handle_predict(const ModelHost& host, std::string_view request_body);
Response handle_health(const ModelHost& host);

struct ServerOptions {
  // Sent as Access-Control-Allow-Origin when non-empty.
  std::string cors_origin;
};

// HTTP front end: POST /api/v1/predict, GET /api/v1/health.
class Server {
 public:
  Server(ModelHost& host, ServerOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds without serving. port 0 picks a free port; returns the bound port
  // or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Splits "addr:port"; throws ArgumentError when malformed.
std::pair<std::string, int> parse_bind(std::string_view bind);

}  // namespace revjudge::service

#endif  // REVJUDGE_SERVICE_SERVICE_H_
