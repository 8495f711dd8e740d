#pragma once

// Randomized invariant checks shared by the unit tests and the acceptance
// suite. Each returns ok = false with a description of the first violation.

#include <cstdint>
#include <string>
#include <vector>

#include "hpmbvp/probspec.hpp"

namespace hpmbvp::testing {

struct PropertyResult {
  bool ok = true;
  std::string detail;
  int cases = 0;
};

inline std::string problemPath(const std::string& name) {
  return std::string(HPMBVP_PROBLEMS_DIR) + "/" + name;
}

/// ex3_1 ... ex3_7
std::vector<std::string> shippedProblems();

Problem loadShipped(const std::string& file);

/// |a - b| <= tol * max(1, |a|, |b|) on every coefficient.
bool polyClose(const UnknownPoly& a, const UnknownPoly& b, double tol);

// sympoly
PropertyResult sympolyRingAxioms(std::uint32_t seed, int trials = 200);
PropertyResult sympolyEvalHomomorphism(std::uint32_t seed, int trials = 200);
PropertyResult sympolyPartialMatchesFiniteDifference(std::uint32_t seed, int trials = 100);
PropertyResult sympolyProductRule(std::uint32_t seed, int trials = 100);

// series
PropertyResult seriesDerivativeUndoesAntiderivative(std::uint32_t seed, int trials = 100);
PropertyResult seriesAntiderivativeUndoesDerivative(std::uint32_t seed, int trials = 100);
PropertyResult seriesConvolutionOracle(std::uint32_t seed, int trials = 100);
PropertyResult seriesEvalHomomorphism(std::uint32_t seed, int trials = 100);
PropertyResult seriesSeedIdentities(std::uint32_t seed, int trials = 100);

// hpm, over every shipped problem
PropertyResult hpmZeroInitialData();
PropertyResult hpmAffineForLinearProblems();
PropertyResult hpmHeGradingIdentity(std::uint32_t seed, int trials = 30);
PropertyResult hpmLadderExactness();

// algebra
PropertyResult algebraNewtonOneStepOnAffine(std::uint32_t seed, int trials = 50);
PropertyResult algebraPermutationInvariance(std::uint32_t seed, int trials = 50);
PropertyResult algebraRowScalingInvariance(std::uint32_t seed, int trials = 50);
PropertyResult algebraSubstitutedResidualsSmall();

// probspec
PropertyResult probspecRoundTrip(std::uint32_t seed, int trials = 200);
PropertyResult probspecPrecedence();

}  // namespace hpmbvp::testing
