#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cqsim/cqs.hpp"

namespace cqsim {

enum class Mode { grover, cqs, pseudopure, mad, speedup };

/// Mode name as used on the command line and in the CSV ("grover", ...).
std::string to_string(Mode mode);
std::optional<Mode> parse_mode(const std::string& name);

struct ExperimentConfig {
    Mode mode = Mode::grover;
    /// Qubits per block (grover/speedup: qubits of the single space /
    /// largest block size; cqs/pseudopure/mad: per-block count).
    int qubits = 2;
    /// Iteration sweep upper bound; defaults to 2 * k* for the mode's
    /// search space when unset.
    std::optional<std::uint64_t> k_max;
    /// Pseudo-pure purity grid; defaults to {0, 0.25, 0.5, 0.75, 1}.
    std::vector<double> epsilons;
    /// Channel description path (mad mode only, required there).
    std::string channel_path;
    /// Recorded for provenance. The sweeps are deterministic and draw no
    /// random numbers; randomized property checks live in the test suite.
    std::uint64_t seed = 0;
    std::string output_path = "results.csv";
};

/// One CSV row. Optional fields serialize as empty cells.
struct ResultRow {
    Mode mode = Mode::grover;
    int qubits = 0;
    std::uint64_t k = 0;
    std::optional<double> epsilon;
    double p_simulated = 0.0;
    double p_closed_form = 0.0;
    std::optional<double> p_paper_formula;
    std::uint64_t local_queries = 0;
    std::uint64_t global_queries = 0;
    bool discrepancy_flag = false;
};

/// Threshold above which simulated-vs-published disagreement is flagged
/// in the CSV, and above which simulated-vs-exact disagreement fails the
/// run.
inline constexpr double discrepancy_tolerance = 1e-9;

struct ExperimentOutput {
    ExperimentConfig config;
    std::vector<ResultRow> rows;
    /// speedup mode only; empty otherwise.
    std::vector<SpeedupRow> speedup;
};

/// Process exit statuses for the CLI (also returned by run_experiment).
namespace exit_status {
inline constexpr int ok = 0;
inline constexpr int audit_failed = 1;
inline constexpr int invalid_config = 2;
inline constexpr int cap_exceeded = 3;
inline constexpr int invalid_channel = 4;
} // namespace exit_status

/// Config check without running anything. Returns an explanation for a
/// rejected config, std::nullopt when acceptable. Cap violations are not
/// config errors; they surface as CapExceeded from execute().
std::optional<std::string> validate_config(const ExperimentConfig& config);

/// Runs the sweep for the config. Throws CapExceeded / ChannelFileError /
/// std::invalid_argument; callers wanting exit codes use run_experiment.
ExperimentOutput execute(const ExperimentConfig& config);

/// Writes rows as CSV: fixed column order
///   mode,n,k,epsilon,p_simulated,p_closed_form,p_paper_formula,
///   local_queries,global_queries,discrepancy_flag
/// header always present, 12 significant digits, LF line endings.
/// Byte-identical for identical row lists.
void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_csv_file(const std::vector<ResultRow>& rows, const std::string& path);

/// Human-readable summary: row count, worst |p_simulated - p_closed_form|
/// with pass/fail against discrepancy_tolerance, every flagged published-
/// formula discrepancy, and in speedup mode the scaling table with
/// least-squares slopes against sqrt(N) and N.
void emit_report(const ExperimentOutput& output, std::ostream& out);

/// validate -> execute -> write CSV -> report. Maps failures to
/// exit_status codes and never throws; error text goes to `report`.
int run_experiment(const ExperimentConfig& config, std::ostream& report);

} // namespace cqsim
