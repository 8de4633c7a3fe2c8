#include "designlens/analysis.hpp"

namespace designlens {

Analysis analyze(const CodeModel& model, const GateConfig& config) {
    Analysis result;
    result.metrics = compute_all(model);
    result.findings = run_all(model, result.metrics, config.thresholds);
    result.report = build_report(model, result.metrics, result.findings);
    result.outcome = evaluate_gates(result.report, config);
    return result;
}

}  // namespace designlens
