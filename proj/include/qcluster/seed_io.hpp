#pragma once

// Seed files:
//
//   {"labels": [...], "btilde": [[...]], "lambda": [[...]],
//    "frame": ["X[...] + ...", ...], "ambient_lambda": [[...]]}
//
// frame and ambient_lambda go together; without them the seed has the
// identity frame over its own torus.

#include <string>
#include <string_view>

#include "qcluster/qseed.hpp"

namespace qcluster {

/// Pretty-printed JSON; the frame is omitted when it is the identity frame.
std::string seed_to_json(const QuantumSeed& seed);

/// ParseError on malformed JSON or a missing field; the seed constructor
/// validates the rest.
QuantumSeed seed_from_json(std::string_view text);

QuantumSeed read_seed_file(const std::string& path);
void write_seed_file(const std::string& path, const QuantumSeed& seed);

}  // namespace qcluster
