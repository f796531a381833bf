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

#include "vqaprobe/visual.h"

#include <algorithm>
#include <cmath>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "vqaprobe/common.h"

namespace vqaprobe {

namespace fs = std::filesystem;

Image ReadImage(const fs::path& path) {
  cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) throw Error("cannot read image " + path.string());
  Image image(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) {
      image.at(x, y, 0) = row[x][2];
      image.at(x, y, 1) = row[x][1];
      image.at(x, y, 2) = row[x][0];
    }
  }
  return image;
}

void WritePng(const fs::path& path, const Image& image) {
  cv::Mat bgr(image.height, image.width, CV_8UC3);
  for (int y = 0; y < image.height; ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < image.width; ++x) {
      row[x] = cv::Vec3b(image.at(x, y, 2), image.at(x, y, 1), image.at(x, y, 0));
    }
  }
  std::vector<uchar> buffer;
  if (!cv::imencode(".png", bgr, buffer)) throw Error("cannot encode " + path.string());
  WriteFile(path, std::string_view(reinterpret_cast<const char*>(buffer.data()), buffer.size()));
}

std::optional<fs::path> FindImage(const fs::path& dir, const std::string& image_id) {
  for (const char* ext : {".png", ".jpg", ".jpeg"}) {
    fs::path candidate = dir / (image_id + ext);
    if (fs::exists(candidate)) return candidate;
  }
  return std::nullopt;
}

namespace {

// Grows [start, start+len) to `target` symmetrically, then shifts into
// [0, limit).
std::pair<int, int> Grow(int start, int len, int target, int limit) {
  if (len >= target) return {start, len};
  const int new_len = std::min(target, limit);
  int new_start = start - (new_len - len) / 2;
  new_start = std::clamp(new_start, 0, limit - new_len);
  return {new_start, new_len};
}

}  // namespace

BoundingBox EnforceMinimumBox(const BoundingBox& box, int width, int height, int min_side) {
  auto [x, w] = Grow(box.x, box.w, min_side, width);
  auto [y, h] = Grow(box.y, box.h, min_side, height);
  return BoundingBox{x, y, w, h};
}

std::optional<ForegroundSpec> SelectForeground(const Instance& instance, const SceneGraph& graph,
                                               Rng& rng) {
  ForegroundSpec spec;
  spec.image_id = graph.image_id;
  if (instance.polarity == Polarity::kNegative) {
    spec.source = ForegroundSource::kRandomNegative;
    std::vector<const SceneObject*> objects;
    for (const auto& [id, object] : graph.objects) objects.push_back(&object);
    const size_t want =
        instance.qtype == QType::kQ2 || instance.qtype == QType::kQ3 ? 2 : 1;
    rng.Shuffle(objects);
    for (size_t i = 0; i < objects.size() && spec.boxes.size() < want; ++i) {
      spec.boxes.push_back(objects[i]->box);
    }
  } else {
    spec.source = ForegroundSource::kTrueObjects;
    for (const auto& arg : instance.bound_args.args) {
      if (arg.object_id.empty()) continue;
      if (const SceneObject* object = graph.Find(arg.object_id)) spec.boxes.push_back(object->box);
    }
  }
  if (spec.boxes.empty()) return std::nullopt;
  for (auto& box : spec.boxes) box = EnforceMinimumBox(box, graph.width, graph.height);
  return spec;
}

BoundingBox UnionRect(std::span<const BoundingBox> boxes) {
  if (boxes.empty()) throw Error("union of no boxes");
  int left = boxes[0].x, top = boxes[0].y;
  int right = boxes[0].right(), bottom = boxes[0].bottom();
  for (const auto& box : boxes) {
    left = std::min(left, box.x);
    top = std::min(top, box.y);
    right = std::max(right, box.right());
    bottom = std::max(bottom, box.bottom());
  }
  return BoundingBox{left, top, right - left, bottom - top};
}

std::vector<double> GaussianBlurPlane(const std::vector<double>& plane, int width, int height,
                                      double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += kernel[i + radius];
  }
  for (double& k : kernel) k /= sum;

  std::vector<double> tmp(plane.size());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int xx = std::clamp(x + i, 0, width - 1);
        acc += kernel[i + radius] * plane[static_cast<size_t>(y) * width + xx];
      }
      tmp[static_cast<size_t>(y) * width + x] = acc;
    }
  }
  std::vector<double> out(plane.size());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int yy = std::clamp(y + i, 0, height - 1);
        acc += kernel[i + radius] * tmp[static_cast<size_t>(yy) * width + x];
      }
      out[static_cast<size_t>(y) * width + x] = acc;
    }
  }
  return out;
}

std::vector<double> SoftMask(int width, int height, std::span<const BoundingBox> boxes,
                             double sigma) {
  std::vector<double> mask(static_cast<size_t>(width) * height, 0.0);
  for (const auto& box : boxes) {
    for (int y = std::max(0, box.y); y < std::min(height, box.bottom()); ++y) {
      for (int x = std::max(0, box.x); x < std::min(width, box.right()); ++x) {
        mask[static_cast<size_t>(y) * width + x] = 1.0;
      }
    }
  }
  auto soft = GaussianBlurPlane(mask, width, height, sigma);
  for (double& m : soft) m = std::clamp(m, 0.0, 1.0);
  return soft;
}

std::array<uint8_t, 3> RoundedMean(const std::array<double, 3>& mean_pixel) {
  std::array<uint8_t, 3> out{};
  for (int c = 0; c < 3; ++c) {
    out[c] = static_cast<uint8_t>(std::clamp(std::lround(mean_pixel[c]), 0L, 255L));
  }
  return out;
}

namespace {

Image Blur(const Image& image, std::span<const BoundingBox> boxes, double sigma) {
  const int w = image.width, h = image.height;
  const auto mask = SoftMask(w, h, boxes, sigma);
  Image out = image;
  std::vector<double> plane(static_cast<size_t>(w) * h);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) plane[static_cast<size_t>(y) * w + x] = image.at(x, y, c);
    }
    const auto blurred = GaussianBlurPlane(plane, w, h, sigma);
    for (size_t i = 0; i < plane.size(); ++i) {
      const double m = mask[i];
      const double value = m * plane[i] + (1.0 - m) * blurred[i];
      out.pixels[i * 3 + c] = static_cast<uint8_t>(std::clamp(std::lround(value), 0L, 255L));
    }
  }
  return out;
}

Image Mask(const Image& image, std::span<const BoundingBox> boxes,
           const std::array<double, 3>& mean_pixel) {
  const auto fill = RoundedMean(mean_pixel);
  Image out(image.width, image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = fill[c];
    }
  }
  for (const auto& box : boxes) {
    for (int y = box.y; y < box.bottom(); ++y) {
      for (int x = box.x; x < box.right(); ++x) {
        for (int c = 0; c < 3; ++c) out.at(x, y, c) = image.at(x, y, c);
      }
    }
  }
  return out;
}

Image Crop(const Image& image, std::span<const BoundingBox> boxes) {
  const BoundingBox rect = UnionRect(boxes);
  Image out(rect.w, rect.h);
  for (int y = 0; y < rect.h; ++y) {
    for (int x = 0; x < rect.w; ++x) {
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = image.at(rect.x + x, rect.y + y, c);
    }
  }
  return out;
}

}  // namespace

Image ApplyPerturbation(const Image& image, std::span<const BoundingBox> boxes,
                        PerturbationKind kind, const std::array<double, 3>& mean_pixel) {
  if (boxes.empty()) throw Error("empty foreground");
  for (const auto& box : boxes) {
    if (!box.Within(image.width, image.height)) {
      throw Error("foreground box outside the " + std::to_string(image.width) + "x" +
                  std::to_string(image.height) + " image");
    }
  }
  switch (kind) {
    case PerturbationKind::kBlur3:
    case PerturbationKind::kBlur6:
    case PerturbationKind::kBlur9:
      return Blur(image, boxes, BlurSigma(kind));
    case PerturbationKind::kMask:
      return Mask(image, boxes, mean_pixel);
    case PerturbationKind::kCrop:
      return Crop(image, boxes);
  }
  throw Error("unknown perturbation");
}

std::array<double, 3> ComputeMeanPixel(std::span<const fs::path> images) {
  std::array<long double, 3> sum{};
  long double count = 0;
  for (const auto& path : images) {
    const Image image = ReadImage(path);
    for (size_t i = 0; i < image.pixels.size(); i += 3) {
      for (int c = 0; c < 3; ++c) sum[c] += image.pixels[i + c];
    }
    count += static_cast<long double>(image.pixels.size() / 3);
  }
  if (count == 0) throw Error("no pixels to average");
  return {static_cast<double>(sum[0] / count), static_cast<double>(sum[1] / count),
          static_cast<double>(sum[2] / count)};
}

}  // namespace vqaprobe
