#pragma once

#include <stdexcept>
#include <string>

namespace polariscope {

// Configuration / input file problems.  Carries optional line context.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, const std::string& file = {}, int line = 0)
      : std::runtime_error(format(msg, file, line)), file_(file), line_(line) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }

private:
  static std::string format(const std::string& msg, const std::string& file,
                            int line) {
    if (file.empty()) return msg;
    if (line <= 0) return file + ": " + msg;
    return file + ":" + std::to_string(line) + ": " + msg;
  }
  std::string file_;
  int line_;
};

// Two independent computation routes disagreed beyond tolerance.  This
// signals a units or convention bug inside the library, never bad user
// input.
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace polariscope
