#pragma once

#include <array>

#include "bcv/ambient.hpp"

namespace bcv::test {

inline const std::array<BcvParams, 6>& parameter_pairs() {
  static const std::array<BcvParams, 6> pairs{BcvParams{0.0, 0.0}, BcvParams{1.0, 0.0},
                                              BcvParams{-1.0, 0.0}, BcvParams{0.0, 0.5},
                                              BcvParams{1.0, 0.5}, BcvParams{4.0, 1.0}};
  return pairs;
}

}  // namespace bcv::test
