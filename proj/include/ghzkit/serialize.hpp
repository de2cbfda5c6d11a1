#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ghzkit/paradox.hpp"

namespace ghzkit {

inline constexpr int kInstanceSchemaVersion = 1;

/// Stable JSON form: parameters, per-party setting lists, composites.
/// Fractions are "num/den" strings.  indent < 0 gives the compact one-line
/// form the digest is computed over.
std::string instance_to_json(const ParadoxInstance& inst, int indent = 2);

/// Parse and fully re-verify: every stored gamma is recomputed from the
/// phase sum and checked along the operator path, so a tampered file fails
/// here rather than in a later analysis.
ParadoxInstance instance_from_json(const std::string& text);

ParadoxInstance load_instance_file(const std::string& path);
void save_instance_file(const ParadoxInstance& inst, const std::string& path);

std::uint64_t fnv1a64(std::string_view bytes);

/// "fnv1a64:" plus 16 hex digits over the compact serialized form.
std::string instance_digest(const ParadoxInstance& inst);

} // namespace ghzkit
