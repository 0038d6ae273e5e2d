#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace council {

enum class Errc {
  duplicate_nid,
  invalid_nid,
  unknown_node,
  invalid_radius,
  disconnected_topology,
  domination_violated,
  invalid_dominating_set,
  invalid_council_size,
  invalid_field,
  duplicate_x,
  zero_x,
  insufficient_shares,
  mixed_epoch,
  incomplete_share_set,
  unknown_cluster,
  not_adjacent,
  parse_error,
  validation_error,
};

std::string_view to_string(Errc code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace council
