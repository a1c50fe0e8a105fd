#pragma once

#include <stdexcept>
#include <string>

namespace rssinfo {

// Malformed textual input (distribution/design specs, config files, CSV).
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::string token)
      : std::invalid_argument(what + ": '" + token + "'"),
        token_(std::move(token)) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

// The integrand returned NaN or +-inf at an interior node.
class NonFiniteIntegrand : public std::runtime_error {
 public:
  explicit NonFiniteIntegrand(double x)
      : std::runtime_error("non-finite integrand at x = " + std::to_string(x)),
        x_(x) {}

  double x() const noexcept { return x_; }

 private:
  double x_;
};

// A divergence integral is not finite (typically a support mismatch).
class DivergentIntegral : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed form was requested for a configuration that has none.
class UnsupportedClosedForm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rssinfo
