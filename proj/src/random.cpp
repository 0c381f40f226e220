#include "homlevel/random.hpp"

namespace homlevel {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

FgModule random_module(const Ring& r, std::mt19937_64& rng, const RandomShape& shape, int base) {
  if (r->is_artin()) {
    Index per = r->dim();
    int cap = static_cast<int>(std::max<Index>(1, shape.max_dim / std::max<Index>(1, per)));
    int g = pick(rng, 1, std::max(1, std::min(shape.max_gens, cap)));
    FgModule f = FgModule::free(r, g);
    if (shape.free_only) return f;
    int s = pick(rng, 0, 2);
    // Redraw relations that kill everything; over F_2 this is common.
    for (int tries = 0;; ++tries) {
      FgModule m = cokernel(random_hom(FgModule::free(r, s), f, rng)).module;
      if (!is_zero(m) || tries == 3) return m;
    }
  }
  std::vector<int> degs;
  int g = pick(rng, 1, shape.max_gens);
  for (int i = 0; i < g; ++i) degs.push_back(base + pick(rng, 0, 1));
  FgModule f = FgModule::free_graded(r, degs);
  if (shape.free_only) return f;
  std::vector<int> rdegs;
  int s = pick(rng, 0, 2);
  for (int i = 0; i < s; ++i) rdegs.push_back(base + pick(rng, 1, 2));
  return cokernel(random_hom(FgModule::free_graded(r, rdegs), f, rng)).module;
}

Complex random_complex(const Ring& r, int lo, int length, std::mt19937_64& rng, const RandomShape& shape) {
  if (length <= 0) return Complex::zero(r);
  std::vector<FgModule> ms{random_module(r, rng, shape, 0)};
  std::vector<ModuleMap> ds;
  ModuleMap cycles = ModuleMap::identity(ms.front());
  for (int i = 1; i < length; ++i) {
    FgModule m = random_module(r, rng, shape, r->is_artin() ? 0 : 2 * i);
    ModuleMap d = cycles * random_hom(m, cycles.source(), rng);
    for (int tries = 0; d.is_zero() && tries < 3; ++tries) d = cycles * random_hom(m, cycles.source(), rng);
    ms.push_back(m);
    ds.push_back(d);
    cycles = kernel(d).inclusion;
  }
  return Complex(r, lo, std::move(ms), std::move(ds));
}

ChainMap random_chain_map(const Complex& x, const Complex& y, std::mt19937_64& rng) {
  ChainMap out = ChainMap::zero(x, y);
  for (const auto& b : chain_map_space(x, y)) out = out + x.ring()->field().random(rng) * b;
  return out;
}

}  // namespace homlevel
