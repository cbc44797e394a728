#ifndef BETTILIN_ERRORS_HPP
#define BETTILIN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bettilin {

/// A configured size cap (lattice elements, faces, Taylor generators) was
/// exceeded. Never silently truncated.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::size_t cap)
      : std::runtime_error(what + " exceeds cap " + std::to_string(cap)), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

/// Malformed ideal input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Limits {
  std::size_t max_lattice = 10000;
  std::size_t max_faces = std::size_t{1} << 20;
  std::size_t max_taylor_generators = 16;
  unsigned threads = 1;
};

}  // namespace bettilin

#endif  // BETTILIN_ERRORS_HPP
