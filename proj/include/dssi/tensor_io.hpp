#pragma once

#include <filesystem>
#include <vector>

#include "dssi/spectral_response.hpp"
#include "dssi/tensor.hpp"

namespace dssi {

// HTNS container, all integers little-endian:
//   "HTNS" | u16 version (=1) | u8 dtype (1=f32, 2=f64) | u8 ndim | ndim x u64 dims | payload
// The payload is the raw little-endian element data in row-major order.

inline constexpr char kHtnsMagic[4] = {'H', 'T', 'N', 'S'};
inline constexpr std::uint16_t kHtnsVersion = 1;

std::vector<unsigned char> encode_tensor(const Tensor& t);
Tensor decode_tensor(const std::vector<unsigned char>& bytes);

void save_tensor(const Tensor& t, const std::filesystem::path& path);
Tensor load_tensor(const std::filesystem::path& path);

/// Reads a "wavelength,r,g,b" CSV into a 3 x N_lambda response.
SpectralResponse load_response_csv(const std::filesystem::path& path);
void save_response_csv(const SpectralResponse& response, const std::vector<double>& wavelengths,
                       const std::filesystem::path& path);

std::vector<unsigned char> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, const std::vector<unsigned char>& bytes);

}  // namespace dssi
