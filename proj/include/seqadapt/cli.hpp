#ifndef SEQADAPT_CLI_HPP
#define SEQADAPT_CLI_HPP

#include <string>
#include <vector>

#include "seqadapt/harness.hpp"

namespace seqadapt {

/// Parses a JSON experiment config, filling defaults (eta=2, gamma=2,
/// beta=1/2, reps=1000, k_max=50) and rejecting out-of-range fields with
/// field-level messages.
ExperimentConfig parse_config(const std::string& text);

/// Batch front-end. argv follows main() conventions without the program
/// name. Returns 0 on success, 2 on usage/config errors, 3 on numeric
/// failures (escalated tail-mass warning).
int run_cli(const std::vector<std::string>& argv);

} // namespace seqadapt

#endif
