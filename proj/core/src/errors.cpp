#include "council/errors.hpp"

namespace council {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::duplicate_nid: return "DuplicateNid";
    case Errc::invalid_nid: return "InvalidNid";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::invalid_radius: return "InvalidRadius";
    case Errc::disconnected_topology: return "DisconnectedTopology";
    case Errc::domination_violated: return "DominationViolated";
    case Errc::invalid_dominating_set: return "InvalidDominatingSet";
    case Errc::invalid_council_size: return "InvalidCouncilSize";
    case Errc::invalid_field: return "InvalidField";
    case Errc::duplicate_x: return "DuplicateX";
    case Errc::zero_x: return "ZeroX";
    case Errc::insufficient_shares: return "InsufficientShares";
    case Errc::mixed_epoch: return "MixedEpoch";
    case Errc::incomplete_share_set: return "IncompleteShareSet";
    case Errc::unknown_cluster: return "UnknownCluster";
    case Errc::not_adjacent: return "NotAdjacent";
    case Errc::parse_error: return "ParseError";
    case Errc::validation_error: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace council
