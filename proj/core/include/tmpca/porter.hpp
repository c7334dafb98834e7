#pragma once

#include <string>

namespace tmpca {

/// Classic Porter (1980) suffix-stripping stemmer, steps 1a through 5b,
/// with the standard longest-match-per-step rule selection. Only lowercase
/// ASCII-alphabetic tokens are stemmed; anything else is returned unchanged.
std::string porter_stem(std::string token);

}  // namespace tmpca
