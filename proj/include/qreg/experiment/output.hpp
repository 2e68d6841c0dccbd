// output.hpp — CSV, JSON sidecar and gnuplot script emission.
#pragma once

#include "qreg/codes.hpp"
#include "qreg/experiment/config.hpp"
#include "qreg/experiment/runners.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace qreg::experiment {

/// Shortest round-trip decimal form, locale independent.
std::string format_number(double v);

/// RFC-4180 CSV: header row, CRLF line endings, fields quoted when needed.
void write_csv(const ResultTable& table, std::ostream& out);

/// Basis vectors as columns; each complex entry becomes a (re, im) column pair.
void write_code_basis_csv(const CodeSubspace& code, std::ostream& out);

/// Metadata sidecar: provenance block, library version and wall time.
Json sidecar(const ResultTable& table, double wall_seconds);

/// gnuplot script plotting <stem>.csv in the layout of the named experiment.
std::string gnuplot_script(const ResultTable& table, const ExperimentConfig& cfg, const std::string& csv_name);

/// Writes <name>.csv, <name>.json and <name>.gp into dir according to
/// cfg.output.formats. Returns the paths written. Throws IoError.
std::vector<std::filesystem::path> emit_outputs(const ResultTable& table, const ExperimentConfig& cfg,
                                                const std::filesystem::path& dir, double wall_seconds);

}  // namespace qreg::experiment
