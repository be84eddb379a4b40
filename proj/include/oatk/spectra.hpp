#pragma once

#include <cstdint>
#include <memory>
#include <utility>

#include "oatk/core.hpp"

namespace oatk {

struct UnsupportedLevels : Error {
  using Error::Error;
};
struct IncompleteSpectrum : Error {
  using Error::Error;
};
/// A distance distribution whose Krawtchouk image has a negative entry;
/// cannot come from a design.
struct NegativeGwp : Error {
  using Error::Error;
};
/// Inverse transform intermediate not divisible by s^k; the GWP is infeasible.
struct NotIntegral : Error {
  using Error::Error;
};

/// Krawtchouk table for (s, k), computed by the two-term recursion with exact
/// integers. Memoized behind a shared cache; safe for concurrent callers.
std::shared_ptr<const KrawtchoukTable> krawtchouk_table(int levels, int factors);

/// All J-characteristics for subsets of size <= rmax (2-level designs only).
/// Exponential in k; callers cap rmax, full spectra are restricted to
/// moderate k. Full GWPs should go through the distance distribution instead.
JSpectrum j_spectrum(const Design& d, int rmax);

/// A_r = N^-2 sum of J_r(l)^2; needs the spectrum complete to size k.
Gwp gwp_from_j(const JSpectrum& js);

/// Counts ordered row pairs by Hamming distance.
DistanceDistribution distance_distribution(const Design& d);

/// A from B by the Krawtchouk transform; throws NegativeGwp on non-design input.
Gwp gwp_from_distance(const DistanceDistribution& b);

/// B from A by the inverse transform; exact, throws NotIntegral when s^k
/// does not divide an intermediate.
DistanceDistribution distance_from_gwp(const Gwp& a);

enum class Ordering { Less, Equal, Greater };

/// Lexicographic comparison of (A_1,...,A_k); Less is better under GMA.
Ordering compare_gwp(const Gwp& a, const Gwp& b);

/// True iff the first nonzero entries (j >= 1) match in index and value,
/// or both patterns vanish entirely.
bool weak_gma_equal(const Gwp& a, const Gwp& b);

/// Direct projection counting, independent of any solver machinery.
bool verify_strength(const Design& d, int strength);

/// Divisibility and parity checks on a 2-level J-spectrum. J must be a
/// multiple of 2^t, and mu = J/2^t has forced parity: even lambda forces
/// even mu; odd lambda forces mu odd exactly when C(|l|-1, |l|-t-1) is odd.
struct ParityReport {
  struct Violation {
    std::uint32_t mask;
    i64 j_value;
    std::string what;
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};
ParityReport check_lemma2(const JSpectrum& js);

/// Residue pair (phi1, phi2) with N^2 A_j == phi1 (mod phi2) and
/// (N^2 A_j - phi1)/phi2 >= 0 for every 2-level strength-t array.
/// phi1 = I * C(k,j) * 2^(2t), phi2 = 2^(2t+2+I), I = C(j-1, j-t-1) mod 2.
std::pair<i64, i64> lemma3_residue(const DesignParams& p, int j);

}  // namespace oatk
