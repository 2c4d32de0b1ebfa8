#pragma once

#include <string>
#include <vector>

#include "tdprplan/model.hpp"

namespace tdprplan {

/// Writes the model as free-format MPS (ROWS/COLUMNS/RHS/BOUNDS, binaries
/// between INTORG/INTEND markers). Output is deterministic and numeric
/// rendering round-trips to the same double.
void write_mps(const MilpModel& model, const std::string& path);

/// Parses a free-format MPS file back into a model. Written independently of
/// write_mps so the pair can cross-check each other.
MilpModel read_mps(const std::string& path);

/// Reads an external solver's solution file: one `name value` pair per line,
/// `#` comments ignored. Unnamed columns default to 0; `missing` reports how
/// many. In strict mode unknown names raise, otherwise they are skipped.
std::vector<double> read_solution(const std::string& path, const VariableIndex& index,
                                  int* missing = nullptr, bool strict = false);

}  // namespace tdprplan
