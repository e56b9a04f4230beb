#pragma once

#include <stdexcept>
#include <string>

namespace cmzv {

enum class ErrorKind {
  InvalidInput,
  Domain,
  Encoding,
  Divergence,
  Capacity,
  Rewrite,
};

/// Base exception for every failure raised by the library. The C API maps
/// `kind()` onto its status codes.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline Error invalid_input(const std::string& what) { return {ErrorKind::InvalidInput, what}; }
inline Error domain_error(const std::string& what) { return {ErrorKind::Domain, what}; }
inline Error encoding_error(const std::string& what) { return {ErrorKind::Encoding, what}; }
inline Error divergence_error(const std::string& what) { return {ErrorKind::Divergence, what}; }
inline Error capacity_error(const std::string& what) { return {ErrorKind::Capacity, what}; }
inline Error rewrite_error(const std::string& what) { return {ErrorKind::Rewrite, what}; }

} // namespace cmzv
