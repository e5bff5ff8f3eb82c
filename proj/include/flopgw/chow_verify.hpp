#pragma once

// Self-check of the ring kernel and the flop identities for a range of n.

#include "json.hpp"

#include <string>
#include <vector>

namespace flopgw::chow {

struct Check {
  int n = 0;
  std::string name;
  bool pass = false;
  bool gating = true;  ///< informational checks are reported but never fail the run
  std::string detail;
};

struct ChowReport {
  int nmax = 0;
  std::vector<Check> checks;
  bool all_pass() const;
};

/// Runs every check for n = 2..nmax. The projection formula is checked on full
/// bases only up to `projection_nmax` to bound the run time.
ChowReport verify(int nmax, int projection_nmax = 4);

nlohmann::json to_json(const ChowReport& r);

}  // namespace flopgw::chow
