#pragma once

#include <vector>

#include "designlens/gates.hpp"
#include "designlens/metrics.hpp"
#include "designlens/model.hpp"
#include "designlens/principles.hpp"
#include "designlens/report.hpp"

namespace designlens {

/// Result of the full metrics -> principles -> report -> gates pipeline.
struct Analysis {
    MetricsReport metrics;
    std::vector<Finding> findings;
    LayeredReport report;
    GateOutcome outcome;
};

Analysis analyze(const CodeModel& model, const GateConfig& config);

}  // namespace designlens
