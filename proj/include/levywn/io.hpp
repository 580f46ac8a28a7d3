#pragma once

#include <string>
#include <vector>

#include "levywn/chaos.hpp"
#include "levywn/jump_basis.hpp"
#include "levywn/levy_measure.hpp"

namespace levywn {

/// Levy measure JSON:
///   {"type":"atoms","atoms":[{"z":...,"w":...},...]}
///   {"type":"density","expr_id":"...","support":[a,b],"nodes":n}
LevyMeasureModel measure_from_json(const std::string& text);
LevyMeasureModel measure_from_json_file(const std::string& path);
std::string measure_to_json(const LevyMeasureModel& model);

/// Chaos expansion JSON: {"terms":[{"alpha":[...],"c":...},...]}.
ChaosExpansion chaos_from_json(const std::string& text);
std::string chaos_to_json(const ChaosExpansion& F);

/// CSV emission.  All doubles are written with %.17g so identical runs
/// produce byte-identical files.
std::string format_double(double v);

/// Chaos expansion CSV: alpha, coefficient, order, index, weight_k (the
/// (2N)^{k alpha} weight at the given k).
std::string chaos_to_csv(const ChaosExpansion& F, int weight_k = 1);

/// Jump-basis CSV: m, degree, c0..cM, gram_residual.
std::string jump_basis_to_csv(const OrthonormalJumpBasis& basis, const LevyMeasureModel& model);

/// One row of a Monte Carlo report.
struct McReportRow {
    std::string quantity;
    double estimate = 0.0;
    double theory = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    double eps = 0.0;
    double truncation_var = 0.0;
};

/// MC report CSV with header
/// quantity,estimate,theory,std_error,n_samples,seed,eps,truncation_var.
std::string mc_report_to_csv(const std::vector<McReportRow>& rows);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace levywn
