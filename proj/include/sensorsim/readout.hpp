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

// Sensor acquisition models: the conventional row-select/column-readout
// scan and the pixel-block scan that reads a 3x3 cluster per step through
// a nine-value circular buffer.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sensorsim/image.hpp"

namespace sensorsim {

/// Readout timing in units of tau. Dimensions follow the sensor: `rows` is
/// m, `cols` is n.
struct TimingModel {
  std::uint64_t rows = 3;
  std::uint64_t cols = 3;
  std::uint64_t tau = 1;

  void validate() const {
    if (tau == 0) throw std::invalid_argument("timing: tau must be positive");
    if (rows < 3 || cols < 3) throw std::invalid_argument("timing: sensor must be at least 3x3");
  }
};

/// Horizontal neighbour (x, y) -> (x, y+1) in a sequential scan.
inline std::uint64_t same_row_latency(const TimingModel& m) {
  m.validate();
  return 2 * m.tau;
}

/// Vertical neighbour (x, y) -> (x+1, y): a full row must pass in between.
inline std::uint64_t same_column_latency(const TimingModel& m) {
  m.validate();
  return (m.cols + 1) * m.tau;
}

/// Time until all nine pixels of a 3x3 block are available when the sensor
/// is read sequentially pixel by pixel, line by line.
inline std::uint64_t conventional_block_latency(const TimingModel& m) {
  m.validate();
  return (2 * m.cols + 3) * m.tau;
}

/// With three parallel column lines the whole block is read in one step.
inline std::uint64_t proposed_block_latency(const TimingModel& m) {
  m.validate();
  return m.tau;
}

inline double block_speedup(const TimingModel& m) {
  return static_cast<double>(conventional_block_latency(m)) /
         static_cast<double>(proposed_block_latency(m));
}

inline std::uint64_t block_count(const TimingModel& m) {
  m.validate();
  return (m.rows - 2) * (m.cols - 2);
}

/// Nine-slot circular buffer holding three column-triples of the current
/// pixel block. Each advance overwrites the oldest triple in place with the
/// next column, so the stored columns are always {y-1, y, y+1}.
class BlockBuffer {
 public:
  /// Reads columns 0..2 of rows x-1..x+1; the block center becomes (x, 1).
  static BlockBuffer prime(const AnalogImage& image, std::size_t x) {
    if (image.width() < 3 || image.height() < 3) {
      throw std::invalid_argument("readout: image smaller than 3x3");
    }
    if (x < 1 || x + 2 > image.height()) {
      throw BoundaryError("readout: row " + std::to_string(x) + " is not an interior row");
    }
    BlockBuffer buf;
    buf.center_x_ = x;
    buf.center_y_ = 1;
    for (std::size_t c = 0; c < 3; ++c) buf.load_triple(image, c, c);
    buf.oldest_ = 0;
    return buf;
  }

  /// Moves the block one column right. Returns false (buffer untouched) when
  /// the current center is already the last interior column.
  bool advance(const AnalogImage& image) {
    const std::size_t next_col = center_y_ + 2;
    if (next_col >= image.width()) return false;
    load_triple(image, oldest_, next_col);
    oldest_ = (oldest_ + 1) % 3;
    ++center_y_;
    return true;
  }

  std::size_t center_x() const { return center_x_; }
  std::size_t center_y() const { return center_y_; }
  std::size_t oldest_column() const { return columns_[oldest_]; }

  /// Stored column indices, oldest first.
  std::array<std::size_t, 3> columns() const {
    return {columns_[oldest_], columns_[(oldest_ + 1) % 3], columns_[(oldest_ + 2) % 3]};
  }

  std::span<const double, 9> slots() const { return slots_; }

  /// Cumulative number of individual slot writes since priming.
  std::uint64_t slot_writes() const { return slot_writes_; }

  PixelBlock block() const {
    PixelBlock b{center_x_, center_y_, {}};
    for (std::size_t age = 0; age < 3; ++age) {
      const std::size_t ring = (oldest_ + age) % 3;
      for (std::size_t r = 0; r < 3; ++r) b.values[r][age] = slots_[ring * 3 + r];
    }
    return b;
  }

 private:
  BlockBuffer() = default;

  void load_triple(const AnalogImage& image, std::size_t ring, std::size_t col) {
    for (std::size_t r = 0; r < 3; ++r) {
      slots_[ring * 3 + r] = image(center_x_ - 1 + r, col);
      ++slot_writes_;
    }
    columns_[ring] = col;
  }

  std::array<double, 9> slots_{};
  std::array<std::size_t, 3> columns_{};
  std::size_t oldest_ = 0;
  std::size_t center_x_ = 0;
  std::size_t center_y_ = 0;
  std::uint64_t slot_writes_ = 0;
};

inline BlockBuffer prime_buffer(const AnalogImage& image, std::size_t x) {
  return BlockBuffer::prime(image, x);
}

/// Streams every interior block in row-major center order through the
/// circular buffer. `fn(const PixelBlock&, std::uint64_t elapsed_tau)` is
/// called once per block; a row start re-primes the buffer, which costs one
/// tau like any other block step.
template <typename Fn>
void for_each_block(const AnalogImage& image, Fn&& fn, std::uint64_t tau = 1) {
  if (image.width() < 3 || image.height() < 3) {
    throw std::invalid_argument("readout: image smaller than 3x3");
  }
  std::uint64_t elapsed = 0;
  for (std::size_t x = 1; x + 1 < image.height(); ++x) {
    BlockBuffer buf = BlockBuffer::prime(image, x);
    do {
      elapsed += tau;
      fn(buf.block(), elapsed);
    } while (buf.advance(image));
  }
}

inline std::vector<PixelBlock> stream_blocks(const AnalogImage& image) {
  std::vector<PixelBlock> blocks;
  if (image.width() >= 3 && image.height() >= 3) {
    blocks.reserve((image.width() - 2) * (image.height() - 2));
  }
  for_each_block(image, [&](const PixelBlock& b, std::uint64_t) { blocks.push_back(b); });
  return blocks;
}

struct TraceRecord {
  std::size_t center_x = 0;
  std::size_t center_y = 0;
  std::uint64_t elapsed_tau = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

using ReadoutTrace = std::vector<TraceRecord>;

/// Acquisition trace for an m x n sensor using the block scan.
inline ReadoutTrace trace_readout(const TimingModel& model) {
  model.validate();
  const AnalogImage blank = AnalogImage::filled(model.cols, model.rows, 0.0);
  ReadoutTrace trace;
  trace.reserve(block_count(model));
  for_each_block(
      blank,
      [&](const PixelBlock& b, std::uint64_t t) { trace.push_back({b.center_x, b.center_y, t}); },
      model.tau);
  return trace;
}

inline std::string trace_to_csv(const ReadoutTrace& trace) {
  std::string out = "center_x,center_y,elapsed_tau\n";
  for (const auto& r : trace) {
    out += std::to_string(r.center_x) + "," + std::to_string(r.center_y) + "," +
           std::to_string(r.elapsed_tau) + "\n";
  }
  return out;
}

}  // namespace sensorsim
