#pragma once

#include <span>
#include <vector>

#include "edgesync/ot_partitioner.hpp"

namespace edgesync {

/// Best-channel association: each cell goes to the server with the largest
/// received SNR per Hz of noise, h * xi / sigma_o^2, ties to the lowest
/// index. Load, compute and DTs play no part.
std::vector<ServerIndex> snr_assign(const ZoneGrid& grid, std::span<const EdgeServer> servers,
                                    const RadioParams& radio, const ChannelModel& model);

/// One pass of the SNR scheme scored with the same metric as `solve`.
SolveResult snr_solve(const Scenario& scenario);

}  // namespace edgesync
