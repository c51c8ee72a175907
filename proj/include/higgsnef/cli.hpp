#pragma once

// Bundle spec files and the command-line front end.
//
// Spec file grammar (one item per line, '#' starts a comment):
//
//   [curve]
//   genus = 2
//
//   [atom]                  # repeated, in order
//   label = L1              # [A-Za-z_][A-Za-z0-9_]*, unique
//   degree = 3
//   rank = 1                # optional, default 1
//   assumed_stable = true   # optional, default true
//
//   [arrow]                 # repeated
//   from = L1
//   to = L2
//
// Exactly one [curve] section and at least one [atom] are required; unknown
// sections and keys are rejected.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "higgsnef/model.hpp"

namespace higgsnef {

/// Errors carry "line L, column C: ..." positions.
SplitHiggsBundle parse_bundle_spec(std::string_view text);

/// Canonical text form; parse_bundle_spec(serialize_bundle_spec(x)) == x.
std::string serialize_bundle_spec(const SplitHiggsBundle& spec);

SplitHiggsBundle load_bundle_spec(const std::string& path);

inline constexpr int kJsonSchemaVersion = 1;

/// Runs one command.  `args` excludes the program name.  Returns 0 on
/// success, 2 on invalid input, 1 when an internal cross-check fails.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace higgsnef
