#ifndef ASSOUAD_KIT_ERROR_HPP
#define ASSOUAD_KIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace akit {

/// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorKind {
  invalid_argument,
  empty_set,
  resolution_violation,
  center_off_set,
  cap_exceeded,
  too_few_scales,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::invalid_argument, what);
}

}  // namespace akit

#endif  // ASSOUAD_KIT_ERROR_HPP
