#pragma once

#include <functional>
#include <string>

#include "ndist/core.hpp"
#include "ndist/random.hpp"

namespace ndist {

/// Sampling model of a ground space: how to draw a fresh element and how to
/// move an element by roughly `step` (continuous spaces) or by a small
/// discrete move (label, integer, vertex spaces).
template <class P>
struct Space {
  std::string tag;
  std::function<P(Rng&)> sample;
  std::function<P(const P&, double step, Rng&)> perturb;
  double initial_step = 0.1;
};

template <class P>
using ConfigSampler = std::function<Config<P>(Rng&)>;

/// Draws the pivot and then each point; with probability `repeat_prob` a
/// point copies the pivot or an earlier point, so that the coincidence
/// patterns the extremal configurations rely on are sampled often.
template <class P>
ConfigSampler<P> config_sampler(Space<P> space, int n, double repeat_prob = 0.25) {
  return [space = std::move(space), n, repeat_prob](Rng& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Config<P> c;
    c.pivot = space.sample(rng);
    c.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (coin(rng) < repeat_prob) {
        std::uniform_int_distribution<int> pick(0, i);
        const int j = pick(rng);
        c.points.push_back(j == 0 ? c.pivot : c.points[static_cast<std::size_t>(j - 1)]);
      } else {
        c.points.push_back(space.sample(rng));
      }
    }
    return c;
  };
}

}  // namespace ndist
