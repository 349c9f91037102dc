#ifndef OAD_GEN_H_
#define OAD_GEN_H_

// Instance generators: the separation family and the random benchmark
// family with three AllDifferent constraints around a shared block.

#include <cstdint>

#include "oad/core.h"
#include "oad/solver.h"

namespace oad {

// X1..Xn in [1, 2n-1], Y1..Y2n in [1, 4n-1], Zn in [2n, 4n-1], with
// AllDifferent(X ∪ Y) and AllDifferent(Y ∪ Z). Unsatisfiable: all 4n
// variables need distinct values from 4n-1. Requires n >= 1.
Problem GenPathological(int n);

// The same instance as one overlapping pair, S = X ∪ Y, T = Y ∪ Z.
OverlapInstance PathologicalInstance(int n);

struct RandomSpec {
  int n = 0;  // size of X, Y and Z
  int d = 0;  // values 1..d
  int o = 0;  // size of the shared block W
  uint64_t seed = 0;
};

// Variables X1..Xn, Y1..Yn, Z1..Zn, W1..Wo in [1, d] with
// AllDifferent(X ∪ W), AllDifferent(Y ∪ W), AllDifferent(Z ∪ W). Each of
// X, Y, Z also gets min(n, n(n-1)/2) constraints V_i < V_j, i < j, on
// distinct index pairs drawn uniformly without replacement. Draws use
// std::mt19937_64(seed) through UniformBelow, blocks in the order X, Y, Z:
// two indices in [0, n), sorted, redrawn when equal or already used.
// Throws InstanceError unless n >= 1, d >= 1, o >= 1.
Problem GenRandom(const RandomSpec& spec);

// One overlapping pair for timing runs: variable i is S-only, shared or
// T-only by i mod 3, with domain [a, b] from two UniformInt(1, d) draws of
// std::mt19937_64(seed), sorted. Requires n >= 1, d >= 1.
OverlapInstance GenScalingInstance(int n, int d, uint64_t seed);

}  // namespace oad

#endif  // OAD_GEN_H_
