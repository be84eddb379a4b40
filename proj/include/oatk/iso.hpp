#pragma once

#include <string>

#include "oatk/core.hpp"

namespace oatk {

/// Totally ordered byte string, equal exactly on isomorphism classes
/// (row permutations, column permutations, per-column level permutations).
struct CanonicalKey {
  std::string bytes;

  auto operator<=>(const CanonicalKey&) const = default;
};

/// The distinguished class representative: the matrix whose column-major
/// reading, with rows sorted, is minimal over all column orders and
/// per-column level relabelings. Row permutations are free, so sorting rows
/// realizes the minimal reading for a fixed column transform.
Design canonical_form(const Design& d);

/// Serialization of canonical_form(d); deterministic and idempotent.
CanonicalKey canonical_key(const Design& d);

/// Key serialization of a matrix assumed to already be in canonical form.
CanonicalKey key_of_form(const Design& form);

/// Cheap isomorphism-invariant bucket key: the distance distribution plus
/// the sorted multiset of delete-one-column distance distributions. Prunes
/// the canonical search to within-bucket work.
std::vector<i64> iso_fingerprint(const Design& d);

/// One canonical-form representative per isomorphism class, sorted by key.
std::vector<Design> reduce_to_classes(const std::vector<Design>& ds, int workers = 1);

/// Applies a seeded random row permutation, column permutation, and
/// per-column level permutation. Deterministic in the seed.
Design random_isomorph(const Design& d, std::uint64_t seed);

}  // namespace oatk
