#ifndef ADVTEXT_ERRORS_H_
#define ADVTEXT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace advtext {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Missing or unusable fixture files, invalid hyperparameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

// Network failure, non-200 status, exhausted retries.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Well-formed response that breaks the protocol (row counts, probability mass).
class ContractError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace advtext

#endif  // ADVTEXT_ERRORS_H_
