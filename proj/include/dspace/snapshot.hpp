#pragma once

#include <string>
#include <string_view>

#include "dspace/model.hpp"

namespace dspace {

// Canonical JSON snapshot: sorted keys, fixed indentation, one top-level
// object per component set plus bookkeeping. The content hash of the
// document defines state identity.
std::string snapshot(const DataSpaceState& state);

// Inverse of snapshot(). Throws CorruptSnapshot on malformed input.
DataSpaceState restore(std::string_view document);

// fnv-1a digest of the canonical snapshot text.
std::string state_hash(const DataSpaceState& state);

}  // namespace dspace
