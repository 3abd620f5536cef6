#pragma once

#include <functional>
#include <string>
#include <vector>

namespace polarity::diag {

using Sink = std::function<void(const std::string&)>;

// Replaces the global warning sink. Passing nullptr restores stderr.
void set_sink(Sink sink);

void warn(std::string msg);

// RAII capture of warnings, for tests and for CLI report assembly.
class Capture {
 public:
  Capture();
  ~Capture();
  Capture(const Capture&) = delete;
  Capture& operator=(const Capture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }
  bool contains(const std::string& needle) const;

 private:
  std::vector<std::string> messages_;
  Sink previous_;
};

}  // namespace polarity::diag
