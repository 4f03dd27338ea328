#ifndef CFSUB_GEN_HPP
#define CFSUB_GEN_HPP

#include <array>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cfsub/types.hpp"

namespace cfsub {

// Free references split by the variance of their positions: arrow domains
// and output payloads flip the variance, rec removes its binder, bare
// references count as covariant.
std::set<Ident> free_covariant_refs(const TypePtr& t);
std::set<Ident> free_contravariant_refs(const TypePtr& t);

struct GenConfig {
  unsigned size = 8;
  std::uint64_t seed = 0;
  std::vector<std::string> labels = {"A", "B", "C"};
  std::vector<std::string> bases = {"int", "bool"};
};

struct GenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A well-formed closed type of roughly cfg.size constructors. Deterministic
// in (seed, config).
TypePtr random_type(const GenConfig& cfg);

// A pair (t, u) with t a subtype of u, built by recursive selection over
// the subtyping properties; both components well-formed and closed.
std::pair<TypePtr, TypePtr> random_valid_pair(const GenConfig& cfg);

// A chain (a, b, c) with a <= b <= c.
std::array<TypePtr, 3> random_valid_triple(const GenConfig& cfg);

// A pair refuted by the depth-6 stratified oracle: built along the valid
// recursion with one invalid property injected; candidates the oracle
// cannot refute are discarded and regenerated. Throws GenError when the
// retry limit is exceeded.
std::pair<TypePtr, TypePtr> random_invalid_pair(const GenConfig& cfg);

}  // namespace cfsub

#endif
