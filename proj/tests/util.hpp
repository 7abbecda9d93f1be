// Shared helpers for the unit tests: relative-error metric and random data.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "dkl/clifford.hpp"
#include "dkl/jets.hpp"

namespace dkl_test {

inline double rel_err(dkl::cplx a, dkl::cplx b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline dkl::cplx random_cplx(dkl::SplitMix64& rng, double bound = 1.0) {
  return {rng.uniform(-bound, bound), rng.uniform(-bound, bound)};
}

inline dkl::LorentzMultiplet random_multiplet(std::uint64_t seed) {
  dkl::SplitMix64 rng(seed);
  dkl::LorentzMultiplet m;
  m.s = random_cplx(rng);
  m.ps = random_cplx(rng);
  for (int i = 0; i < 4; ++i) {
    m.v[i] = random_cplx(rng);
    m.pv[i] = random_cplx(rng);
  }
  for (auto& pr : dkl::kTensorPairs) {
    dkl::cplx c = random_cplx(rng);
    m.t[pr[0]][pr[1]] = c;
    m.t[pr[1]][pr[0]] = -c;
  }
  return m;
}

}  // namespace dkl_test
