#include "lanekit/tensor_io.hpp"

#include <bit>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lanekit {

namespace {

constexpr char kMagic[4] = {'L', 'G', 'T', '1'};

[[noreturn]] void fail(const std::string& ctx, const std::string& msg) {
  throw std::runtime_error(ctx + ": " + msg);
}

void append_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t read_u32(const std::string& bytes, std::size_t offset) {
  const auto b = [&](std::size_t i) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + i]));
  };
  return b(0) | (b(1) << 8) | (b(2) << 16) | (b(3) << 24);
}

// Validated element count; throws on zero dims or size_t overflow.
std::size_t checked_count(const std::vector<std::uint32_t>& dims, const std::string& ctx) {
  if (dims.empty()) fail(ctx, "tensor rank must be at least 1");
  std::size_t count = 1;
  for (const std::uint32_t d : dims) {
    if (d == 0) fail(ctx, "tensor dimensions must be positive");
    if (count > std::numeric_limits<std::size_t>::max() / d) {
      fail(ctx, "tensor dimensions overflow");
    }
    count *= d;
  }
  if (count > std::numeric_limits<std::size_t>::max() / 4) {
    fail(ctx, "tensor dimensions overflow");
  }
  return count;
}

}  // namespace

std::size_t Tensor::element_count() const { return checked_count(dims, "tensor"); }

std::string tensor_to_bytes(const Tensor& t) {
  const std::size_t count = checked_count(t.dims, "tensor");
  if (t.data.size() != count) {
    fail("tensor", "payload has " + std::to_string(t.data.size()) + " elements, dims require " +
                       std::to_string(count));
  }
  std::string out;
  out.reserve(4 + 4 + 4 * t.dims.size() + 4 * count);
  out.append(kMagic, 4);
  append_u32(out, static_cast<std::uint32_t>(t.dims.size()));
  for (const std::uint32_t d : t.dims) append_u32(out, d);
  for (const float f : t.data) append_u32(out, std::bit_cast<std::uint32_t>(f));
  return out;
}

Tensor tensor_from_bytes(const std::string& bytes, const std::string& context) {
  if (bytes.size() < 8) fail(context, "file too short for header");
  if (bytes.compare(0, 4, kMagic, 4) != 0) fail(context, "bad magic (expected 'LGT1')");
  const std::uint32_t rank = read_u32(bytes, 4);
  if (rank == 0) fail(context, "tensor rank must be at least 1");
  const std::size_t header = 8 + 4 * static_cast<std::size_t>(rank);
  if (bytes.size() < header) fail(context, "truncated dimension list");

  Tensor t;
  t.dims.reserve(rank);
  for (std::uint32_t i = 0; i < rank; ++i) t.dims.push_back(read_u32(bytes, 8 + 4 * i));
  const std::size_t count = checked_count(t.dims, context);

  const std::size_t expected = header + 4 * count;
  if (bytes.size() < expected) fail(context, "truncated payload");
  if (bytes.size() > expected) fail(context, "trailing bytes after payload");

  t.data.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    t.data.push_back(std::bit_cast<float>(read_u32(bytes, header + 4 * i)));
  }
  return t;
}

Tensor read_tensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return tensor_from_bytes(buf.str(), path);
}

void write_tensor(const Tensor& t, const std::string& path) {
  const std::string bytes = tensor_to_bytes(t);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open file for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(path, "write failed");
}

}  // namespace lanekit
