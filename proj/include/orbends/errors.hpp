#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbends {

/// Base of every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed argument: vertex out of range, non-automorphism, bad letter.
class input_error : public error {
public:
  using error::error;
};

/// A documented precondition does not hold (disconnected input, intransitive group).
class precondition_error : public error {
public:
  using error::error;
};

/// A configured size cap would be exceeded.
class capacity_error : public error {
public:
  capacity_error(const std::string &what, std::size_t cap, std::size_t size)
      : error(what + " (cap " + std::to_string(cap) + ", size " +
              std::to_string(size) + ")"),
        cap_(cap), size_(size) {}

  std::size_t cap() const noexcept { return cap_; }
  std::size_t size() const noexcept { return size_; }

private:
  std::size_t cap_;
  std::size_t size_;
};

/// A query reached the truncation frontier; regenerate with a larger window.
class scale_error : public error {
public:
  using error::error;
};

class parse_error : public error {
public:
  parse_error(int line, const std::string &what)
      : error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

private:
  int line_;
};

} // namespace orbends
