#include "dmot/preprocess.hpp"

#include "dmot/partition.hpp"

namespace dmot {

std::unique_ptr<Structure> preprocess(const MetricSpace& ms, const PreprocessOptions& opt) {
  opt.config.validate();
  auto s = std::make_unique<Structure>();
  s->tree = compress(build_partition_tree(ms, compute_params(ms, opt.rng_seed), opt.config), opt.hash_seed);
  s->nav.build(s->tree);
  s->rng_seed = opt.rng_seed;
  if (opt.opening_costs) {
    if (static_cast<int>(opt.opening_costs->size()) != ms.size())
      throw Error(ErrorCode::BadInput, "one opening cost per point required");
    s->fl = fl_preprocess_unrestricted(s->tree, *opt.opening_costs, opt.eps0);
  }
  return s;
}

}  // namespace dmot
