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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "sensorsim/image.hpp"
#include "sensorsim/pgm.hpp"

namespace sensorsim {
namespace {

std::string pgm16_bytes(const std::string& header, std::initializer_list<unsigned> values) {
  std::string s = header;
  for (unsigned v : values) {
    s.push_back(static_cast<char>(v >> 8));
    s.push_back(static_cast<char>(v & 0xFF));
  }
  return s;
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("sensorsim_pgm_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST(ImageTest, RejectsOutOfRangeAnalogSamples) {
  EXPECT_THROW(AnalogImage(2, 1, {0.5, 1.5}), std::invalid_argument);
  EXPECT_THROW(AnalogImage(2, 1, {-0.1, 0.5}), std::invalid_argument);
  EXPECT_THROW(AnalogImage(2, 1, {NAN, 0.5}), std::invalid_argument);
  EXPECT_THROW(AnalogImage(2, 2, {0.5, 0.5}), std::invalid_argument);
}

TEST(ImageTest, RowMajorAddressing) {
  const AnalogImage img(3, 2, {0, 0.1, 0.2, 0.3, 0.4, 0.5});
  EXPECT_EQ(img.width(), 3u);
  EXPECT_EQ(img.height(), 2u);
  EXPECT_DOUBLE_EQ(img(1, 0), 0.3);  // row 1, column 0
  EXPECT_DOUBLE_EQ(img(0, 2), 0.2);
  EXPECT_THROW(img.at(2, 0), std::out_of_range);
}

TEST(ExtractBlockTest, ConstantImage) {
  const AnalogImage img = AnalogImage::filled(6, 5, 0.25);
  const PixelBlock b = extract_block(img, 2, 3);
  for (const auto& row : b.values) {
    for (double v : row) EXPECT_EQ(v, 0.25);
  }
}

TEST(ExtractBlockTest, ThreeByThreeBlockIsWholeImage) {
  std::vector<double> s;
  for (int i = 0; i < 9; ++i) s.push_back(i / 8.0);
  const AnalogImage img(3, 3, s);
  const PixelBlock b = extract_block(img, 1, 1);
  EXPECT_EQ(b.center_x, 1u);
  EXPECT_EQ(b.center_y, 1u);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) EXPECT_EQ(b.values[r][c], s[r * 3 + c]);
  }
}

TEST(ExtractBlockTest, BoundaryCentersRejected) {
  const AnalogImage img = AnalogImage::filled(5, 4, 0.0);
  EXPECT_THROW(extract_block(img, 0, 2), BoundaryError);
  EXPECT_THROW(extract_block(img, 2, 0), BoundaryError);
  EXPECT_THROW(extract_block(img, 3, 2), BoundaryError);  // last row
  EXPECT_THROW(extract_block(img, 1, 4), BoundaryError);  // last column
  EXPECT_THROW(extract_block(img, 10, 10), BoundaryError);
  EXPECT_NO_THROW(extract_block(img, 2, 3));
}

TEST(ExtractBlockTest, IsPure) {
  std::mt19937_64 rng(3);
  const AnalogImage img = oracle::random_image(7, 6, rng);
  EXPECT_EQ(extract_block(img, 2, 2), extract_block(img, 2, 2));
}

TEST(PgmTest, DecodesEndpointMapping) {
  const AnalogImage img = decode_pgm16(pgm16_bytes("P5 2 2 65535\n", {0, 65535, 65535, 0}));
  ASSERT_EQ(img.width(), 2u);
  ASSERT_EQ(img.height(), 2u);
  EXPECT_EQ(img(0, 0), 0.0);
  EXPECT_EQ(img(0, 1), 1.0);
  EXPECT_EQ(img(1, 0), 1.0);
  EXPECT_EQ(img(1, 1), 0.0);
}

TEST(PgmTest, BigEndianSamples) {
  const AnalogImage img = decode_pgm16(pgm16_bytes("P5\n1 1\n65535\n", {0x0102}));
  EXPECT_EQ(img(0, 0), 258.0 / 65535.0);
}

TEST(PgmTest, AcceptsHeaderComments) {
  const AnalogImage img =
      decode_pgm16(pgm16_bytes("P5\n# made by hand\n1 # width\n1\n65535\n", {65535}));
  EXPECT_EQ(img(0, 0), 1.0);
}

TEST(PgmTest, ErrorsAreDistinct) {
  auto kind_of = [](const std::string& bytes) {
    try {
      decode_pgm16(bytes);
    } catch (const PgmError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error";
    return PgmErrorKind::kMalformedHeader;
  };
  EXPECT_EQ(kind_of("P6 1 1 65535\n\0\0"), PgmErrorKind::kMalformedHeader);
  EXPECT_EQ(kind_of("P5 1 x 65535\n"), PgmErrorKind::kMalformedHeader);
  EXPECT_EQ(kind_of("P5 1 1"), PgmErrorKind::kMalformedHeader);
  EXPECT_EQ(kind_of(std::string("P5 1 1 255\n\x7f", 12)), PgmErrorKind::kUnsupportedMaxval);
  EXPECT_EQ(kind_of(pgm16_bytes("P5 2 2 65535\n", {1, 2, 3})), PgmErrorKind::kTruncatedPayload);
}

TEST(PgmTest, UnsupportedMaxvalMessage) {
  try {
    decode_pgm16(std::string("P5 1 1 255\n\x7f", 12));
    FAIL();
  } catch (const PgmError& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported maxval"), std::string::npos);
  }
}

TEST(PgmTest, NormalizationIsABijectionOnCodes) {
  for (unsigned v = 0; v <= 65535; ++v) {
    const AnalogImage img = decode_pgm16(pgm16_bytes("P5 1 1 65535\n", {v}));
    ASSERT_EQ(std::lround(img(0, 0) * 65535.0), static_cast<long>(v));
  }
}

TEST_F(TempDir, Pgm16RoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<int> dim(1, 40);
    const AnalogImage img = oracle::random_image(dim(rng), dim(rng), rng);
    const auto path = dir_ / "rt.pgm";
    save_pgm16(img, path);
    EXPECT_EQ(load_pgm16(path), img);
  }
}

TEST(PgmTest, EncodesEightBitPayload) {
  EXPECT_EQ(encode_pgm8(DigitalImage(1, 1, {255})), std::string("P5\n1 1\n255\n\xFF"));
  const std::string two = encode_pgm8(DigitalImage(2, 1, {0, 128}));
  ASSERT_GE(two.size(), 2u);
  EXPECT_EQ(static_cast<unsigned char>(two[two.size() - 2]), 0x00);
  EXPECT_EQ(static_cast<unsigned char>(two[two.size() - 1]), 0x80);
  EXPECT_EQ(encode_pgm8(DigitalImage(1, 1, {7})).find('#'), std::string::npos);
}

TEST_F(TempDir, Pgm8SaveThenReload) {
  std::mt19937_64 rng(5);
  const DigitalImage img = oracle::random_digital(17, 9, rng);
  save_pgm8(img, dir_ / "out.pgm");
  EXPECT_EQ(load_pgm8(dir_ / "out.pgm"), img);
  EXPECT_FALSE(std::filesystem::exists(dir_ / "out.pgm.tmp"));
}

TEST_F(TempDir, SaveToMissingDirectoryFails) {
  EXPECT_THROW(save_pgm8(DigitalImage(1, 1, {1}), dir_ / "nope" / "x.pgm"), IoError);
}

TEST(PgmTest, MissingFileIsAnIoError) {
  EXPECT_THROW(load_pgm16("/nonexistent/definitely/missing.pgm"), IoError);
}

}  // namespace
}  // namespace sensorsim
