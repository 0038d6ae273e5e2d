#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "council/audit.hpp"
#include "council/simulator.hpp"

namespace council {

/// JSON snapshot of partition, share ledger and adversary holdings. Shares
/// are written as "(x, y, k, epoch, p)" decimal tuples.
std::string dump_state(const SimState& s);

/// Audit input recovered from a dump: one entry per cluster carrying the
/// adversary shares of its current generation.
/// Throws ParseError.
std::vector<AuditCluster> audit_input_from_dump(std::string_view json_text);

}  // namespace council
