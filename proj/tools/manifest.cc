#include "manifest.h"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "advtext/errors.h"

namespace advtext::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "' for checksum");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw IoError("SHA-256 unavailable");
  }
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RunManifest::add_fixture(std::string role, const std::filesystem::path& path) {
  fixtures.push_back({std::move(role), path.string(), sha256_file(path)});
}

nlohmann::json RunManifest::fixtures_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : fixtures) out.push_back({{"role", f.role}, {"path", f.path}, {"sha256", f.sha256}});
  return out;
}

nlohmann::json RunManifest::to_json() const {
  return {{"subcommand", subcommand}, {"command", command},     {"config", config},
          {"fixtures", fixtures_json()}, {"seed", seed},       {"timestamp", timestamp}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  m.subcommand = j.at("subcommand").get<std::string>();
  m.command = j.at("command").get<std::vector<std::string>>();
  m.config = j.value("config", nlohmann::json::object());
  for (const auto& f : j.at("fixtures")) {
    m.fixtures.push_back({f.at("role").get<std::string>(), f.at("path").get<std::string>(),
                          f.at("sha256").get<std::string>()});
  }
  m.seed = j.value("seed", std::uint64_t{0});
  m.timestamp = j.value("timestamp", std::string());
  return m;
}

void RunManifest::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest '" + path.string() + "'");
  out << to_json().dump(2) << '\n';
  if (!out) throw IoError("failed writing manifest '" + path.string() + "'");
}

RunManifest RunManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest '" + path.string() + "'");
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed manifest '" + path.string() + "': " + e.what());
  }
}

std::vector<std::string> RunManifest::verify() const {
  std::vector<std::string> problems;
  for (const auto& f : fixtures) {
    try {
      if (sha256_file(f.path) != f.sha256) problems.push_back(f.role + " '" + f.path + "' changed");
    } catch (const IoError&) {
      problems.push_back(f.role + " '" + f.path + "' is missing");
    }
  }
  return problems;
}

}  // namespace advtext::cli
