/*
 * Copyright 2026 The sensorsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Binary Netpbm graymap (P5) reader/writer. Input is 16-bit big-endian
// (maxval 65535) mapped to [0,1]; output is 8-bit (maxval 255). A 16-bit
// writer exists for synthetic corpora and round-trip tests.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sensorsim/image.hpp"
#include "sensorsim/io.hpp"

namespace sensorsim {

enum class PgmErrorKind { kMalformedHeader, kUnsupportedMaxval, kTruncatedPayload };

class PgmError : public std::runtime_error {
 public:
  PgmError(PgmErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  PgmErrorKind kind() const { return kind_; }

 private:
  PgmErrorKind kind_;
};

struct PgmHeader {
  std::size_t width = 0;
  std::size_t height = 0;
  std::uint32_t maxval = 0;
  std::size_t payload_offset = 0;
};

namespace detail {

class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(std::string_view bytes) : bytes_(bytes) {}

  PgmHeader read() {
    if (bytes_.size() < 2 || bytes_[0] != 'P' || bytes_[1] != '5') {
      fail("missing P5 magic");
    }
    pos_ = 2;
    PgmHeader h;
    h.width = next_number("width");
    h.height = next_number("height");
    const std::uint64_t maxval = next_number("maxval");
    if (h.width == 0 || h.height == 0) fail("zero image dimension");
    if (maxval == 0 || maxval > 65535) fail("maxval out of range");
    h.maxval = static_cast<std::uint32_t>(maxval);
    // Exactly one whitespace byte separates maxval from the raster.
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) fail("missing raster separator");
    h.payload_offset = pos_ + 1;
    return h;
  }

 private:
  static bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

  [[noreturn]] static void fail(const std::string& why) {
    throw PgmError(PgmErrorKind::kMalformedHeader, "pgm: malformed header: " + why);
  }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::uint64_t next_number(const char* field) {
    const std::size_t before = pos_;
    skip_space_and_comments();
    if (pos_ == before) fail(std::string("expected whitespace before ") + field);
    std::uint64_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(bytes_[pos_] - '0');
      if (value > (1u << 30)) fail(std::string(field) + " too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) fail(std::string("expected ") + field);
    return value;
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

inline std::string pgm_header(std::size_t width, std::size_t height, unsigned maxval) {
  return "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n" +
         std::to_string(maxval) + "\n";
}

}  // namespace detail

inline PgmHeader parse_pgm_header(std::string_view bytes) {
  return detail::PgmHeaderReader(bytes).read();
}

/// Decodes a 16-bit P5 buffer; each raw value v becomes v / 65535.
inline AnalogImage decode_pgm16(std::string_view bytes) {
  const PgmHeader h = parse_pgm_header(bytes);
  if (h.maxval != 65535) {
    throw PgmError(PgmErrorKind::kUnsupportedMaxval,
                   "pgm: unsupported maxval " + std::to_string(h.maxval) + " (expected 65535)");
  }
  const std::size_t count = h.width * h.height;
  if (bytes.size() - h.payload_offset < count * 2) {
    throw PgmError(PgmErrorKind::kTruncatedPayload, "pgm: truncated payload");
  }
  std::vector<double> samples(count);
  const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data() + h.payload_offset);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned v = (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
    samples[i] = static_cast<double>(v) / 65535.0;
  }
  return AnalogImage(h.width, h.height, std::move(samples));
}

inline AnalogImage load_pgm16(const std::filesystem::path& path) {
  return decode_pgm16(read_file(path));
}

inline std::uint16_t to_code16(double sample) {
  return static_cast<std::uint16_t>(std::lround(sample * 65535.0));
}

inline std::string encode_pgm16(const AnalogImage& image) {
  std::string out = detail::pgm_header(image.width(), image.height(), 65535);
  out.reserve(out.size() + image.size() * 2);
  for (double s : image.samples()) {
    const std::uint16_t v = to_code16(s);
    out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v & 0xFF));
  }
  return out;
}

inline void save_pgm16(const AnalogImage& image, const std::filesystem::path& path) {
  write_file_atomic(path, encode_pgm16(image));
}

inline std::string encode_pgm8(const DigitalImage& image) {
  std::string out = detail::pgm_header(image.width(), image.height(), 255);
  out.append(reinterpret_cast<const char*>(image.samples().data()), image.size());
  return out;
}

inline void save_pgm8(const DigitalImage& image, const std::filesystem::path& path) {
  write_file_atomic(path, encode_pgm8(image));
}

inline DigitalImage decode_pgm8(std::string_view bytes) {
  const PgmHeader h = parse_pgm_header(bytes);
  if (h.maxval != 255) {
    throw PgmError(PgmErrorKind::kUnsupportedMaxval,
                   "pgm: unsupported maxval " + std::to_string(h.maxval) + " (expected 255)");
  }
  const std::size_t count = h.width * h.height;
  if (bytes.size() - h.payload_offset < count) {
    throw PgmError(PgmErrorKind::kTruncatedPayload, "pgm: truncated payload");
  }
  const auto* raw = reinterpret_cast<const std::uint8_t*>(bytes.data() + h.payload_offset);
  return DigitalImage(h.width, h.height, std::vector<std::uint8_t>(raw, raw + count));
}

inline DigitalImage load_pgm8(const std::filesystem::path& path) {
  return decode_pgm8(read_file(path));
}

}  // namespace sensorsim
