#ifndef ZUGANG_ERROR_HPP
#define ZUGANG_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zugang {

// Base for everything the engine throws on bad input data.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& path)
      : Error("cannot read '" + path + "'"), path_(path) {}
  IoError(const std::string& path, const std::string& what)
      : Error(what + " '" + path + "'"), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Rule pack problems found while compiling (duplicate id, bad regex, ...).
class RuleCompileError : public Error {
 public:
  RuleCompileError(const std::string& rule_id, const std::string& what)
      : Error("rule '" + rule_id + "': " + what), rule_id_(rule_id) {}

  const std::string& rule_id() const { return rule_id_; }

 private:
  std::string rule_id_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace zugang

#endif  // ZUGANG_ERROR_HPP
