#include <benchmark/benchmark.h>

#include "lapblend/blend.hpp"
#include "lapblend/hextile.hpp"
#include "lapblend/noise.hpp"
#include "lapblend/pyramid.hpp"

using namespace lapblend;

namespace {

void BM_MipChain(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const auto filter = static_cast<FilterKind>(state.range(1));
  const Image img = white_noise(size, size, 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_mip_chain(img, filter));
  state.SetItemsProcessed(state.iterations() * size * size);
}
BENCHMARK(BM_MipChain)
    ->ArgsProduct({{256, 1024}, {int(FilterKind::Box), int(FilterKind::Lanczos2)}})
    ->Unit(benchmark::kMillisecond);

void BM_LaplacianBlend(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const Image a = white_noise(size, size, 3, 1);
  const Image b = white_noise(size, size, 3, 2);
  const Image m = horizontal_ramp(size, size, size / 2.0, size / 8.0);
  const BlendInput input = make_blend_input(a, b, m, FilterKind::Box);
  BlendParams p;
  p.num_levels = static_cast<int>(state.range(1));
  p.skip_levels = state.range(2) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(laplacian_blend(input, p));
  state.SetItemsProcessed(state.iterations() * size * size);
}
BENCHMARK(BM_LaplacianBlend)
    ->Args({512, 0, 0})
    ->Args({512, 4, 0})
    ->Args({512, 4, 1})
    ->Args({512, 6, 0})
    ->Unit(benchmark::kMillisecond);

void BM_HexTile(benchmark::State& state) {
  const Image tex = value_noise(256, 256, 3, 32, 3);
  const MipChain chain = build_mip_chain(tex, FilterKind::Box);
  HexTileParams params;
  params.blend.num_levels = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hextile_render(chain, 512, 512, params));
  state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(BM_HexTile)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
