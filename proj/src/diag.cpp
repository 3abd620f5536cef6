#include "polarity/diag.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace polarity::diag {

namespace {

std::mutex g_mutex;
Sink g_sink;

}  // namespace

void set_sink(Sink sink) {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_sink = std::move(sink);
}

void warn(std::string msg) {
  std::lock_guard<std::mutex> lock(g_mutex);
  if (g_sink) {
    g_sink(msg);
  } else {
    std::cerr << "warning: " << msg << "\n";
  }
}

Capture::Capture() {
  std::lock_guard<std::mutex> lock(g_mutex);
  previous_ = g_sink;
  g_sink = [this](const std::string& m) { messages_.push_back(m); };
}

Capture::~Capture() {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_sink = previous_;
}

bool Capture::contains(const std::string& needle) const {
  for (const auto& m : messages_) {
    if (m.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace polarity::diag
