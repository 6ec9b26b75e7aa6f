#include "advtext/http.h"

#include <algorithm>
#include <charconv>
#include <thread>

#include <httplib.h>

#include "advtext/errors.h"

namespace advtext {

Endpoint Endpoint::parse(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind(kScheme, 0) != 0) {
    throw ConfigError("endpoint '" + std::string(url) + "' must start with http://");
  }
  std::string_view rest = url.substr(kScheme.size());
  auto slash = rest.find('/');
  std::string_view authority = rest.substr(0, slash);
  Endpoint ep;
  ep.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
  auto colon = authority.rfind(':');
  if (colon == std::string_view::npos) {
    ep.host = std::string(authority);
  } else {
    ep.host = std::string(authority.substr(0, colon));
    auto port = authority.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), ep.port);
    if (ec != std::errc() || ptr != port.data() + port.size() || ep.port <= 0 || ep.port > 65535) {
      throw ConfigError("endpoint '" + std::string(url) + "' has an invalid port");
    }
  }
  if (ep.host.empty()) throw ConfigError("endpoint '" + std::string(url) + "' has no host");
  return ep;
}

std::string Endpoint::to_string() const {
  return "http://" + host + ":" + std::to_string(port) + path;
}

nlohmann::json post_json(const Endpoint& endpoint, const nlohmann::json& body,
                         const RetryPolicy& policy) {
  const std::string payload = body.dump();
  auto backoff = policy.initial_backoff;
  std::string last_error = "no attempts made";
  const int attempts = std::max(1, policy.max_attempts);
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    httplib::Client client(endpoint.host, endpoint.port);
    client.set_connection_timeout(policy.timeout);
    client.set_read_timeout(policy.timeout);
    client.set_write_timeout(policy.timeout);
    auto res = client.Post(endpoint.path, payload, "application/json");
    if (!res) {
      last_error = "request to " + endpoint.to_string() + " failed: " + httplib::to_string(res.error());
    } else if (res->status == 200) {
      try {
        return nlohmann::json::parse(res->body);
      } catch (const nlohmann::json::parse_error& e) {
        throw ContractError("malformed JSON from " + endpoint.to_string() + ": " + e.what());
      }
    } else {
      last_error = endpoint.to_string() + " returned HTTP " + std::to_string(res->status);
      if (res->status < 500) throw TransportError(last_error);
    }
    if (attempt < attempts) {
      std::this_thread::sleep_for(backoff);
      auto next = std::chrono::duration_cast<std::chrono::milliseconds>(backoff * policy.multiplier);
      backoff = std::min(next, policy.max_backoff);
    }
  }
  throw TransportError(last_error + " (after " + std::to_string(attempts) + " attempts)");
}

}  // namespace advtext
