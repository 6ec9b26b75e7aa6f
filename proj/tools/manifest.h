#ifndef ADVTEXT_TOOLS_MANIFEST_H_
#define ADVTEXT_TOOLS_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace advtext::cli {

struct FixtureRecord {
  std::string role;
  std::string path;
  std::string sha256;
};

// Hex SHA-256 of a file's bytes. Throws IoError if unreadable.
std::string sha256_file(const std::filesystem::path& path);

// Everything needed to rerun a command: its argument vector, the resolved
// configuration, and the checksums of every input file.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> command;  // arguments after the program name
  nlohmann::json config;
  std::vector<FixtureRecord> fixtures;
  std::uint64_t seed = 0;
  std::string timestamp;

  void add_fixture(std::string role, const std::filesystem::path& path);
  nlohmann::json fixtures_json() const;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);

  void save(const std::filesystem::path& path) const;
  static RunManifest load(const std::filesystem::path& path);

  // Checksum mismatches against the files currently on disk.
  std::vector<std::string> verify() const;
};

std::string utc_timestamp();

}  // namespace advtext::cli

#endif  // ADVTEXT_TOOLS_MANIFEST_H_
