// Copyright 2026 The vqaprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Image obfuscation around question foreground boxes: soft Gaussian blur,
// mean-pixel masking and cropping.

#ifndef VQAPROBE_VISUAL_H_
#define VQAPROBE_VISUAL_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqaprobe/dataset.h"
#include "vqaprobe/random.h"
#include "vqaprobe/scene_graph.h"

namespace vqaprobe {

inline constexpr int kMinBoxSide = 32;

// 8-bit RGB raster, row-major, channels interleaved.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  Image() = default;
  Image(int w, int h) : width(w), height(h), pixels(static_cast<size_t>(w) * h * 3, 0) {}

  uint8_t& at(int x, int y, int c) {
    return pixels[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
  uint8_t at(int x, int y, int c) const {
    return pixels[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
  friend bool operator==(const Image&, const Image&) = default;
};

// PNG or JPEG in; throws Error when unreadable.
Image ReadImage(const std::filesystem::path& path);
// Always PNG.
void WritePng(const std::filesystem::path& path, const Image& image);
// {image_id}.png, .jpg or .jpeg under dir, if present.
std::optional<std::filesystem::path> FindImage(const std::filesystem::path& dir,
                                               const std::string& image_id);

// Grows a box below the minimum side symmetrically about its center, then
// shifts it inside the image. Sides longer than the image are cut to fit.
BoundingBox EnforceMinimumBox(const BoundingBox& box, int width, int height,
                              int min_side = kMinBoxSide);

enum class ForegroundSource { kTrueObjects, kRandomNegative };

struct ForegroundSpec {
  std::string image_id;
  std::vector<BoundingBox> boxes;
  ForegroundSource source = ForegroundSource::kTrueObjects;
};

// Positive and multi-choice instances: boxes of every annotated object the
// question references. Negative instances: one random object box (two for
// Q2/Q3). nullopt when the graph offers no box.
std::optional<ForegroundSpec> SelectForeground(const Instance& instance, const SceneGraph& graph,
                                               Rng& rng);

// Smallest rectangle containing all boxes.
BoundingBox UnionRect(std::span<const BoundingBox> boxes);

// Separable Gaussian, radius ceil(3 sigma), borders clamped. Float planes,
// one per channel, row-major.
std::vector<double> GaussianBlurPlane(const std::vector<double>& plane, int width, int height,
                                      double sigma);

// Binary foreground mask blurred with the same sigma, in [0, 1].
std::vector<double> SoftMask(int width, int height, std::span<const BoundingBox> boxes,
                             double sigma);

Image ApplyPerturbation(const Image& image, std::span<const BoundingBox> boxes,
                        PerturbationKind kind, const std::array<double, 3>& mean_pixel);

// Mean pixel rounded to 8 bits per channel.
std::array<uint8_t, 3> RoundedMean(const std::array<double, 3>& mean_pixel);

// Channel-wise mean over every pixel of the given images.
std::array<double, 3> ComputeMeanPixel(std::span<const std::filesystem::path> images);

}  // namespace vqaprobe

#endif  // VQAPROBE_VISUAL_H_
