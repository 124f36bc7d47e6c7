#pragma once

#include <string>
#include <string_view>

#include "regtor/linalg/matrix.hpp"

namespace regtor {

/// Lowercase hex SHA-256 of the bytes of `data`.
std::string sha256_hex(std::string_view data);

/// Digest of a matrix's shape and entries in a canonical text serialization
/// ("rows cols;r c value;..." in column-major order).
std::string matrix_digest(const linalg::ExactMatrix& m);

}  // namespace regtor
