#pragma once

#ifdef BRAUERKIT_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

namespace brauerkit {
using Json = nlohmann::ordered_json;
}
