#ifndef WSIR_REPORT_HPP
#define WSIR_REPORT_HPP

#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include "wsir/config.hpp"
#include "wsir/experiments.hpp"
#include "wsir/limit.hpp"
#include "wsir/sim.hpp"

namespace wsir {

// All writers emit a header row and deterministic row order (n, then t),
// '.' decimal point, comma separator.

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          std::size_t class_count);
void write_limit_csv(std::ostream& os, const LimitSolution& sol);
void write_convergence_csv(std::ostream& os, const ConvergenceReport& report);
void write_corollary_csv(std::ostream& os, std::span<const CorollaryRow> rows);
void write_lemma1_csv(std::ostream& os, std::span<const Lemma1Row> rows);
void write_sandwich_csv(std::ostream& os, std::span<const SandwichRow> rows);
void write_threshold_csv(std::ostream& os, std::span<const ThresholdRow> rows);
void write_beta_csv(std::ostream& os, std::span<const BetaRow> rows);

/// JSON summary: config echo, master seed, tool version, emitted files.
void write_summary_json(std::ostream& os, const ExperimentConfig& cfg,
                        const std::string& subcommand,
                        std::span<const std::string> files);

/// Writes `name` under cfg.out_dir (created if absent); returns the path.
/// I/O failures surface as std::runtime_error naming the path.
std::string emit_file(const ExperimentConfig& cfg, const std::string& name,
                      const std::function<void(std::ostream&)>& writer);

std::string format_real(double x);

}  // namespace wsir

#endif
