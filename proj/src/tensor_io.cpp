#include "dssi/tensor_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "dssi/error.hpp"

namespace dssi {

SpectralResponse::SpectralResponse(std::size_t bands, std::vector<double> values)
    : bands_(bands), values_(std::move(values)) {
  if (values_.size() != 3 * bands_) {
    throw DimensionError("spectral response needs 3 x " + std::to_string(bands_) + " values");
  }
}

SpectralResponse SpectralResponse::identity(std::size_t bands) {
  std::vector<double> v(3 * bands, 0.0);
  for (std::size_t c = 0; c < 3 && c < bands; ++c) v[c * bands + c] = 1.0;
  return SpectralResponse(bands, std::move(v));
}

namespace {

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
  out.insert(out.end(), raw, raw + sizeof(T));
}

class Reader {
 public:
  explicit Reader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

  template <typename T>
  T take(const char* what) {
    if (pos_ + sizeof(T) > bytes_.size()) {
      throw ParseError(std::string("unexpected end of ") + what);
    }
    unsigned char raw[sizeof(T)];
    std::memcpy(raw, bytes_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, raw, sizeof(T));
    return value;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::vector<unsigned char> encode_tensor(const Tensor& t) {
  if (t.dims.empty() || t.dims.size() > 255) throw DimensionError("tensor must have 1..255 dims");
  if (t.element_count() != t.data.size()) throw DimensionError("tensor dims/data length mismatch");

  std::vector<unsigned char> out;
  const std::size_t elem = t.dtype == DType::f32 ? 4 : 8;
  out.reserve(8 + 8 * t.dims.size() + elem * t.data.size());
  out.insert(out.end(), kHtnsMagic, kHtnsMagic + 4);
  put_le<std::uint16_t>(out, kHtnsVersion);
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(t.dtype));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(t.dims.size()));
  for (std::uint64_t d : t.dims) put_le<std::uint64_t>(out, d);
  if (t.dtype == DType::f32) {
    for (double v : t.data) put_le<float>(out, static_cast<float>(v));
  } else {
    for (double v : t.data) put_le<double>(out, v);
  }
  return out;
}

Tensor decode_tensor(const std::vector<unsigned char>& bytes) {
  Reader in(bytes);
  char magic[4];
  for (char& m : magic) m = static_cast<char>(in.take<std::uint8_t>("header"));
  if (std::memcmp(magic, kHtnsMagic, 4) != 0) throw ParseError("bad magic");
  const auto version = in.take<std::uint16_t>("header");
  if (version != kHtnsVersion) throw ParseError("unsupported version " + std::to_string(version));
  const auto code = in.take<std::uint8_t>("header");
  if (code != 1 && code != 2) throw ParseError("bad dtype code " + std::to_string(code));
  const auto ndim = in.take<std::uint8_t>("header");
  if (ndim == 0) throw ParseError("bad ndim 0");

  std::vector<std::uint64_t> dims(ndim);
  std::uint64_t count = 1;
  for (auto& d : dims) {
    d = in.take<std::uint64_t>("dims");
    if (d == 0) throw ParseError("bad dims: zero extent");
    if (count > (std::uint64_t{1} << 40) / d) throw ParseError("bad dims: element count overflow");
    count *= d;
  }

  const auto dtype = static_cast<DType>(code);
  const std::size_t elem = dtype == DType::f32 ? 4 : 8;
  if (in.remaining() < count * elem) throw ParseError("unexpected end of payload");
  if (in.remaining() > count * elem) throw ParseError("trailing bytes after payload");

  std::vector<double> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = dtype == DType::f32 ? static_cast<double>(in.take<float>("payload")) : in.take<double>("payload");
    if (!std::isfinite(data[i])) {
      throw ValidationError("non-finite value at element " + std::to_string(i));
    }
  }
  return Tensor(std::move(dims), dtype, std::move(data));
}

std::vector<unsigned char> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for reading");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (f.bad()) throw IoError("read failure on " + path.string());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failure on " + path.string());
}

void save_tensor(const Tensor& t, const std::filesystem::path& path) {
  write_file_bytes(path, encode_tensor(t));
}

Tensor load_tensor(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return decode_tensor(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

SpectralResponse load_response_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for reading");

  auto fail = [&](std::size_t row, const std::string& why) -> ValidationError {
    return ValidationError(path.string() + ": row " + std::to_string(row) + ": " + why);
  };

  std::string line;
  std::size_t row = 0;
  if (!std::getline(f, line)) throw fail(1, "missing header");
  ++row;
  {
    auto fields = split_commas(line);
    if (fields.size() != 4 || fields[0] != "wavelength" || fields[1] != "r" || fields[2] != "g" ||
        fields[3] != "b") {
      throw fail(row, "header must be \"wavelength,r,g,b\"");
    }
  }

  std::vector<double> wavelengths;
  std::vector<double> channels[3];
  while (std::getline(f, line)) {
    ++row;
    if (trim(line).empty()) continue;
    auto fields = split_commas(line);
    if (fields.size() != 4) throw fail(row, "expected 4 fields, got " + std::to_string(fields.size()));
    double v[4];
    for (int j = 0; j < 4; ++j) {
      const auto s = fields[static_cast<std::size_t>(j)];
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v[j]);
      if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v[j])) {
        throw fail(row, "malformed number \"" + std::string(s) + "\"");
      }
    }
    if (!wavelengths.empty() && v[0] <= wavelengths.back()) {
      throw fail(row, "wavelengths must be strictly increasing");
    }
    for (int c = 0; c < 3; ++c) {
      if (v[c + 1] < 0.0) throw fail(row, "negative response");
      channels[c].push_back(v[c + 1]);
    }
    wavelengths.push_back(v[0]);
  }
  if (wavelengths.empty()) throw fail(row, "no data rows");

  const std::size_t bands = wavelengths.size();
  std::vector<double> values;
  values.reserve(3 * bands);
  for (auto& ch : channels) values.insert(values.end(), ch.begin(), ch.end());
  return SpectralResponse(bands, std::move(values));
}

void save_response_csv(const SpectralResponse& response, const std::vector<double>& wavelengths,
                       const std::filesystem::path& path) {
  if (wavelengths.size() != response.bands()) throw DimensionError("one wavelength per band required");
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "wavelength,r,g,b\n" << std::setprecision(17);
  for (std::size_t i = 0; i < response.bands(); ++i) {
    f << wavelengths[i] << ',' << response(0, i) << ',' << response(1, i) << ',' << response(2, i) << '\n';
  }
  if (!f) throw IoError("write failure on " + path.string());
}

}  // namespace dssi
