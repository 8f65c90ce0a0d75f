#pragma once

#include <cstdint>
#include <string>

namespace jt {

enum class corpus_kind { numbers, random_mixed, escaped_strings, large };

// Key planted throughout random-mixed (and large) corpora; its values are
// small integers, so query results against it are predictable.
inline constexpr const char *kPlantedKey = "planted";

// Deterministic synthetic corpus. `size` means element count for numbers
// and escaped-strings, approximate byte count for random-mixed and large;
// size 0 yields `[]`. Output is always valid JSON.
std::string generate_corpus(corpus_kind kind, uint64_t size, uint64_t seed);

} // namespace jt
