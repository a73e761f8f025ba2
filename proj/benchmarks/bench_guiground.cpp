// Copyright 2026 The guiground Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "guiground/backends.hpp"
#include "guiground/eval.hpp"
#include "guiground/geometry.hpp"
#include "guiground/pipeline.hpp"
#include "guiground/random.hpp"
#include "guiground/synthgui.hpp"

namespace {

using namespace guiground;

void BM_Iou(benchmark::State& state) {
  Rng rng(1);
  std::vector<BBox> boxes;
  for (int i = 0; i < 1024; ++i) {
    const double x = rng.uniform() * 900, y = rng.uniform() * 900;
    boxes.push_back({x, y, x + rng.uniform() * 100, y + rng.uniform() * 100});
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(iou(boxes[i & 1023], boxes[(i * 7 + 3) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_Iou);

synth::Fixtures scene_fixtures(std::uint64_t seed) {
  return synth::emit_fixtures(synth::generate_scene(seed, {}));
}

void BM_BuildElementList(benchmark::State& state) {
  const auto fx = scene_fixtures(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_element_list(fx.detections.detections, fx.spans.spans));
  }
  state.SetLabel(std::to_string(fx.detections.detections.size()) + " detections");
}
BENCHMARK(BM_BuildElementList);

void BM_Retrieve(benchmark::State& state) {
  const auto fx = scene_fixtures(5);
  const auto elements = build_element_list(fx.detections.detections, fx.spans.spans);
  const auto target = extract_target("click the save changes button");
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(&retrieve(elements, target));
    } catch (const std::exception&) {
    }
  }
}
BENCHMARK(BM_Retrieve);

void BM_Evaluate(benchmark::State& state) {
  const auto scenes = static_cast<std::uint64_t>(state.range(0));
  std::vector<DetectionFrame> dets;
  std::vector<TextFrame> spans;
  std::vector<ImageExpressionsPair> pairs;
  for (std::uint64_t s = 0; s < scenes; ++s) {
    const auto scene = synth::generate_scene(s, {});
    auto fx = synth::emit_fixtures(scene);
    dets.push_back(std::move(fx.detections));
    spans.push_back(std::move(fx.spans));
    auto gt = synth::emit_ground_truth(scene);
    pairs.insert(pairs.end(), gt.pairs.begin(), gt.pairs.end());
  }
  PipelineBackend backend(std::make_shared<GroundingEngine>(
      std::make_shared<FixtureDetector>(std::move(dets)),
      std::make_shared<FixtureTextReader>(std::move(spans)),
      std::make_shared<LocalMatcher>(), "ivgocr-local"));
  EvalOptions opts;
  opts.timestamp = "-";
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(pairs, backend, opts));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * pairs.size()));
}
BENCHMARK(BM_Evaluate)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
