#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lanekit {

// Dense float tensor, row-major with the innermost dimension last.
struct Tensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> data;

  std::size_t element_count() const;
};

// On-disk layout, all integers little-endian:
//   magic "LGT1" | u32 rank (>= 1) | u32 dims[rank] (each >= 1) | f32 payload
std::string tensor_to_bytes(const Tensor& t);
Tensor tensor_from_bytes(const std::string& bytes, const std::string& context);

Tensor read_tensor(const std::string& path);
void write_tensor(const Tensor& t, const std::string& path);

}  // namespace lanekit
