#include "pec/rng.hpp"

#include <stdexcept>

namespace pec {

AliasSampler::AliasSampler(const std::vector<double>& weights) {
  const std::size_t k = weights.size();
  if (k == 0) throw std::invalid_argument("alias sampler needs weights");
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) throw std::invalid_argument("alias sampler weights sum to zero");

  accept_.assign(k, 1.0);
  alias_.assign(k, 0);
  std::vector<double> scaled(k);
  for (std::size_t i = 0; i < k; ++i) scaled[i] = weights[i] * double(k) / total;

  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < k; ++i)
    (scaled[i] < 1.0 ? small : large).push_back(std::uint32_t(i));

  while (!small.empty() && !large.empty()) {
    std::uint32_t s = small.back();
    small.pop_back();
    std::uint32_t l = large.back();
    large.pop_back();
    accept_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  for (std::uint32_t i : large) accept_[i] = 1.0;
  for (std::uint32_t i : small) accept_[i] = 1.0;
}

std::size_t AliasSampler::draw(Rng& rng) const {
  std::size_t cell = std::size_t(rng.below(accept_.size()));
  return rng.uniform() < accept_[cell] ? cell : alias_[cell];
}

}  // namespace pec
