#include "sigquad/util.hpp"

#include <iostream>

namespace sigquad {

void warn(const std::string& message) {
  std::cerr << "[sigquad] warning: " << message << "\n";
}

std::uint64_t fnv1a(std::span<const unsigned char> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t fnv1a(const std::string& text) {
  return fnv1a(std::span<const unsigned char>(
      reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

}  // namespace sigquad
