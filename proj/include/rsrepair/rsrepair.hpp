#pragma once

#include "rsrepair/errors.hpp"
#include "rsrepair/expsums.hpp"
#include "rsrepair/field.hpp"
#include "rsrepair/io.hpp"
#include "rsrepair/partition.hpp"
#include "rsrepair/reconstruct.hpp"
#include "rsrepair/rng.hpp"
#include "rsrepair/schemes.hpp"
#include "rsrepair/verify.hpp"

namespace rsrepair {
inline constexpr const char* kVersion = "0.1.0";
}
