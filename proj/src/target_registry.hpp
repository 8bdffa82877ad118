#pragma once

#include <vector>

#include "procova/models.hpp"
#include "procova/simulation.hpp"

namespace procova::detail {

/// Frozen beta*(theta*) values (10^7-sample plug-in, seed 20250101), or
/// nullptr when the scenario is not tabulated.
const std::vector<double>* lookup_targets(OutcomeModel model, int shift_pattern,
                                          ModelVariant variant);

}  // namespace procova::detail
