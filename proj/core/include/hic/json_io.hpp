/**
 * This code is part of hic.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license in the LICENSE file in the root directory of this
 * source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef HIC_JSON_IO_HPP_
#define HIC_JSON_IO_HPP_

#include <string>

#include "hic/puncture.hpp"
#include "hic/qpd.hpp"
#include "hic/selector.hpp"

namespace hic {

/// Strategy JSON embeds the native circuit (as QASM) plus the action list, so
/// a file is self-contained: loading re-derives the subcircuit partition.
std::string strategy_to_json(const CutStrategy &s);
CutStrategy strategy_from_json(const std::string &text);
CutStrategy load_strategy(const std::string &path);
void save_strategy(const CutStrategy &s, const std::string &path);

std::string punctured_to_json(const PuncturedMap &p);
std::string candidate_to_json(const CandidateEvaluation &eval);
std::string selection_to_json(const SelectionResult &sel);
std::string comparison_to_json(const ComparisonReport &report);
std::string reconstruction_to_json(const ReconstructionResult &rec);

/// Per-candidate rows (d, cuts, executions, W_s, feasible) for plotting.
std::string selection_to_csv(const SelectionResult &sel);

} // namespace hic

#endif
