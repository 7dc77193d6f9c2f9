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
#include <random>

#include "oracles.hpp"
#include "sensorsim/analog_frontend.hpp"
#include "sensorsim/signal_chain.hpp"

namespace sensorsim {
namespace {

TEST(QuantizeTest, Endpoints) {
  EXPECT_EQ(quantize(0.0), 0);
  EXPECT_EQ(quantize(1.0), 255);
}

TEST(QuantizeTest, HalfRoundsUp) {
  EXPECT_EQ(quantize(0.5), 128);
  EXPECT_EQ(quantize(0.5 / 255.0), 1);
}

TEST(QuantizeTest, RejectsOutOfRange) {
  EXPECT_THROW(quantize(-1e-9), std::domain_error);
  EXPECT_THROW(quantize(1.0 + 1e-9), std::domain_error);
  EXPECT_THROW(quantize(NAN), std::domain_error);
}

TEST(QuantizeTest, MonotoneAndSurjectiveOnDenseGrid) {
  int prev = quantize(0.0);
  std::vector<bool> hit(256, false);
  for (int i = 0; i <= 100000; ++i) {
    const int q = quantize(i * 1e-5);
    ASSERT_GE(q, prev);
    hit[q] = true;
    prev = q;
  }
  for (int c = 0; c < 256; ++c) EXPECT_TRUE(hit[c]) << c;
}

TEST(QuantizeTest, ReconstructionErrorBound) {
  double worst = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double v = i * 1e-5;
    worst = std::max(worst, std::abs(dequantize(quantize(v)) - v));
  }
  EXPECT_LE(worst, 1.0 / 510.0);
}

TEST(DequantizeTest, EndpointsAndRoundTrip) {
  EXPECT_EQ(dequantize(255), 1.0);
  EXPECT_EQ(dequantize(0), 0.0);
  for (int c = 0; c < 256; ++c) ASSERT_EQ(quantize(dequantize(c)), c);
  EXPECT_THROW(dequantize(256), std::domain_error);
  EXPECT_THROW(dequantize(-1), std::domain_error);
}

TEST(QuantizerSpecTest, FromBits) {
  EXPECT_EQ(QuantizerSpec::from_bits(8).out_levels, 256);
  EXPECT_EQ(QuantizerSpec::from_bits(1).out_levels, 2);
  EXPECT_THROW(QuantizerSpec::from_bits(9), std::invalid_argument);
  EXPECT_THROW(QuantizerSpec::from_bits(0), std::invalid_argument);
  const QuantizerSpec four = QuantizerSpec::from_bits(4);
  EXPECT_EQ(quantize(1.0, four), 15);
  EXPECT_EQ(quantize(0.5, four), 8);  // 7.5 rounds up
}

TEST(QuantizeImageTest, ConstantImages) {
  EXPECT_EQ(quantize_image(AnalogImage::filled(4, 3, 1.0)), DigitalImage::filled(4, 3, 255));
  EXPECT_EQ(quantize_image(AnalogImage::filled(4, 3, 0.5)), DigitalImage::filled(4, 3, 128));
}

TEST(QuantizeImageTest, ElementWise) {
  std::mt19937_64 rng(61);
  const AnalogImage img = oracle::random_image(23, 17, rng);
  const DigitalImage q = quantize_image(img);
  ASSERT_EQ(q.width(), img.width());
  ASSERT_EQ(q.height(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) ASSERT_EQ(q.samples()[i], quantize(img.samples()[i]));
}

TEST(AwgnTest, ZeroVarianceIsIdentity) {
  std::mt19937_64 rng(67);
  const AnalogImage img = oracle::random_image(20, 10, rng);
  EXPECT_EQ(add_awgn(img, {0.0, 123}), img);
}

TEST(AwgnTest, DeterministicUnderSeed) {
  const AnalogImage img = AnalogImage::filled(64, 32, 0.5);
  EXPECT_EQ(add_awgn(img, {1e-3, 9}), add_awgn(img, {1e-3, 9}));
  EXPECT_NE(add_awgn(img, {1e-3, 9}), add_awgn(img, {1e-3, 10}));
}

TEST(AwgnTest, VarianceAndMeanOnMidGray) {
  const std::size_t n = 512;
  const AnalogImage clean = AnalogImage::filled(n, n, 0.5);
  const AnalogImage noisy = add_awgn(clean, {1e-3, 2024});
  double sum = 0.0, sum2 = 0.0;
  for (double s : noisy.samples()) {
    const double d = s - 0.5;
    sum += d;
    sum2 += d * d;
  }
  const double count = static_cast<double>(n * n);
  const double mean = sum / count;
  const double var = sum2 / count - mean * mean;
  EXPECT_NEAR(var, 1e-3, 0.05e-3);
  EXPECT_LE(std::abs(mean), 3.0 * std::sqrt(1e-3) / std::sqrt(count));
}

TEST(AwgnTest, ClampsToRails) {
  const AnalogImage noisy = add_awgn(AnalogImage::filled(100, 100, 0.99), {0.1, 5});
  for (double s : noisy.samples()) {
    ASSERT_GE(s, 0.0);
    ASSERT_LE(s, 1.0);
  }
}

TEST(AwgnTest, RowsUseIndependentSubstreams) {
  // Row x of a tall image equals row x of any other image height.
  const AnalogImage a = add_awgn(AnalogImage::filled(16, 8, 0.5), {1e-2, 77});
  const AnalogImage b = add_awgn(AnalogImage::filled(16, 3, 0.5), {1e-2, 77});
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t y = 0; y < 16; ++y) ASSERT_EQ(a(x, y), b(x, y));
  }
}

TEST(AwgnTest, NegativeVarianceRejected) {
  EXPECT_THROW(add_awgn(AnalogImage::filled(2, 2, 0.5), {-1.0, 0}), std::invalid_argument);
}

TEST(GaussianStreamTest, StandardNormalMoments) {
  GaussianStream g(99);
  double sum = 0, sum2 = 0, sum4 = 0;
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    const double z = g.next();
    sum += z;
    sum2 += z * z;
    sum4 += z * z * z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sum2 / n, 1.0, 0.01);
  EXPECT_NEAR(sum4 / n, 3.0, 0.05);
}

TEST(OrderSensitivityTest, WitnessExistsAndConstantsAgree) {
  // Filter-then-quantize versus quantize-filter-requantize.
  auto analog_first = [](const AnalogImage& img, const Kernel3x3& k) {
    return quantize_image(filter_image_analog(img, k));
  };
  auto digital_first = [](const AnalogImage& img, const Kernel3x3& k) {
    return quantize_image(filter_image_analog(dequantize_image(quantize_image(img)), k));
  };
  // Two interleaved levels straddling the 127/128 boundary.
  const double lo = 127.3 / 255.0, hi = 127.55 / 255.0;
  const AnalogImage witness(3, 3, {hi, lo, hi, lo, hi, lo, hi, lo, hi});
  const Kernel3x3 k = average_kernel();
  EXPECT_NE(analog_first(witness, k), digital_first(witness, k));

  for (double c : {0.0, 0.25, 0.5, 127.5 / 255.0, 1.0}) {
    const AnalogImage flat = AnalogImage::filled(5, 5, c);
    EXPECT_EQ(analog_first(flat, k), digital_first(flat, k));
    EXPECT_EQ(analog_first(flat, binomial_kernel()), digital_first(flat, binomial_kernel()));
  }
}

}  // namespace
}  // namespace sensorsim
