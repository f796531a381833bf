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

// Perturbed-instance construction for each test.

#ifndef VQAPROBE_PAIRS_H_
#define VQAPROBE_PAIRS_H_

#include <variant>

#include "vqaprobe/dataset.h"
#include "vqaprobe/generator.h"

namespace vqaprobe {

using PairResult = std::variant<InstancePair, DropReason>;

// Original constraints a test needs so that its perturbation is possible
// (e.g. an object with an eligible hypernym for the ontological test).
OriginalSpec SpecFor(TestKind test, QType qtype, Polarity polarity,
                     const GeneratorContext& context);

// Builds the perturbed side for a non-visual test. The visual test keeps the
// question and only needs the original, so it returns a pair whose perturbed
// instance is a copy awaiting an image reference. Ids are assigned later.
PairResult BuildPair(TestKind test, const Instance& original, const ImageView& image,
                     const GeneratorContext& context, Rng& rng);

std::string FlipYesNo(const std::string& answer);

}  // namespace vqaprobe

#endif  // VQAPROBE_PAIRS_H_
