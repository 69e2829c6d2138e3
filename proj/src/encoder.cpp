#include "taskgrid/encoder.hpp"

#include <openssl/evp.h>

#include <stdexcept>

#include "taskgrid/rng.hpp"

namespace taskgrid {

std::array<uint8_t, 32> sha256(const uint8_t* data, size_t len) {
  std::array<uint8_t, 32> out{};
  unsigned int out_len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr ||
      EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data, len) != 1 ||
      EVP_DigestFinal_ex(ctx, out.data(), &out_len) != 1 || out_len != 32) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("SHA-256 computation failed");
  }
  EVP_MD_CTX_free(ctx);
  return out;
}

std::string sha256_hex(const std::string& data) {
  const auto digest =
      sha256(reinterpret_cast<const uint8_t*>(data.data()), data.size());
  return bytes_to_hex(std::vector<uint8_t>(digest.begin(), digest.end()));
}

std::string TaskCode::hex() const {
  return bytes_to_hex(std::vector<uint8_t>(digest.begin(), digest.end()));
}

TaskCode encode(const Dfa& a) {
  TaskCode code;
  code.canonical_bytes = canonical(minimize(a)).bytes;
  code.digest = sha256(code.canonical_bytes.data(), code.canonical_bytes.size());
  return code;
}

std::vector<TaskCode> encode_vector(const DfaVector& v) {
  std::vector<TaskCode> out;
  out.reserve(static_cast<size_t>(v.size()));
  for (int i = 0; i < v.size(); ++i) out.push_back(encode(v[i]));
  return out;
}

std::vector<double> expand_code(const TaskCode& code, int dim) {
  // seed the projection from the first digest words; equal codes expand
  // identically by construction
  uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) {
    seed = (seed << 8) | code.digest[static_cast<size_t>(i)];
  }
  SplitMix64 rng(seed);
  std::vector<double> out(static_cast<size_t>(dim));
  for (auto& x : out) x = rng.next_double() * 2.0 - 1.0;
  return out;
}

}  // namespace taskgrid
