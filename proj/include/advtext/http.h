#ifndef ADVTEXT_HTTP_H_
#define ADVTEXT_HTTP_H_

#include <chrono>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace advtext {

// "http://host:port/path". Only plain HTTP is supported.
struct Endpoint {
  std::string host;
  int port = 80;
  std::string path = "/";

  static Endpoint parse(std::string_view url);
  std::string to_string() const;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{50};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{1000};
  std::chrono::seconds timeout{30};
};

// POSTs `body` as JSON and returns the parsed response. Connection failures
// and 5xx responses are retried per `policy`; other non-200 statuses fail
// immediately. Throws TransportError when no attempt succeeds and
// ContractError when a 200 body is not valid JSON.
nlohmann::json post_json(const Endpoint& endpoint, const nlohmann::json& body,
                         const RetryPolicy& policy);

}  // namespace advtext

#endif  // ADVTEXT_HTTP_H_
