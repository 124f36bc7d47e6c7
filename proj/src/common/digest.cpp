#include "regtor/common/digest.hpp"

#include <array>
#include <cstdio>

#include <openssl/sha.h>

namespace regtor {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, SHA256_DIGEST_LENGTH> hash{};
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), hash.data());
  std::string out;
  out.reserve(2 * hash.size());
  for (unsigned char b : hash) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", b);
    out += buf;
  }
  return out;
}

std::string matrix_digest(const linalg::ExactMatrix& m) {
  std::string text = std::to_string(m.rows()) + " " + std::to_string(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (const auto& [r, x] : m.column(c)) {
      text += ";" + std::to_string(r) + " " + std::to_string(c) + " " + x.get_str();
    }
  }
  return sha256_hex(text);
}

}  // namespace regtor
