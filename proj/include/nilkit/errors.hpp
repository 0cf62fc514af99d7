#pragma once

#include <stdexcept>
#include <string>

namespace nilkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// bad numeric or structural input (n <= 0, unknown generator, m not a pi-number, ...)
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// value outside Q_pi (non-pi denominator, inverse with non-pi numerator)
class NotInRing : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

 private:
  int line_, col_;
};

// relation references a generator that is not above the relation's subject
class OrderingViolation : public Error {
 public:
  using Error::Error;
};

// operands from different ambient groups
class GroupMismatch : public Error {
 public:
  using Error::Error;
};

// out of the kit's supported range (class > 3, torsion ambient for roots, ...)
class Unsupported : public Error {
 public:
  using Error::Error;
};

// a theorem hypothesis failed on concrete input; carries the certificate text
class HypothesisFailed : public Error {
 public:
  HypothesisFailed(const std::string& msg, const std::string& certificate)
      : Error(msg), certificate_(certificate) {}
  const std::string& certificate() const { return certificate_; }

 private:
  std::string certificate_;
};

// enumeration would exceed the configured cap (NILKIT_MAX_ENUM)
class TooLarge : public Error {
 public:
  using Error::Error;
};

// returns the brute-force cap, default 10^6, overridable via NILKIT_MAX_ENUM
long max_enum();

}  // namespace nilkit
