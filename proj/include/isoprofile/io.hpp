#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "isoprofile/chain.hpp"
#include "isoprofile/profile.hpp"
#include "isoprofile/skeleton.hpp"

namespace isoprofile {

struct LoadOptions {
  // Replaces the radius of a bfs oracle.
  std::optional<std::size_t> oracle_radius;
};

struct LoadedSkeleton {
  SkeletonSpec spec;
  std::shared_ptr<const WordOracle> oracle;
};

// Reads the skeleton format:
//
//   {"dim": 2,
//    "presentation": {"generators": ["a", "b"], "relators": ["a b a^-1 b^-1"]},
//    "oracle": {"kind": "abelian"},
//    "cells": [{"dim": 2, "id": "r0",
//               "boundary": [{"word": "e", "base": "e_a", "coeff": 1}, ...]}]}
//
// The presentation may also be a string such as "<a, b | a b a^-1 b^-1>".
// Without "cells" a dim 2 input becomes the presentation complex. The vertex
// and the edges are derived from the presentation when not listed. Oracle
// kinds: free, abelian, table (identity, generators, multiplication), bfs
// (radius, max_states) and dehn; the default is free for presentations
// without relators and bfs otherwise.
//
// Throws ParseError on malformed input and InvalidSkeleton on structural
// problems. The chain complex itself is not validated here.
LoadedSkeleton load_skeleton(const nlohmann::json& doc,
                             const LoadOptions& options = {});
LoadedSkeleton load_skeleton_file(const std::filesystem::path& path,
                                  const LoadOptions& options = {});

nlohmann::json skeleton_to_json(const SkeletonSpec& spec);

// SHA-256 of the canonical skeleton JSON and the oracle id, in hex.
std::string fingerprint(const SkeletonSpec& spec, const WordOracle& oracle);
std::string sha256_hex(std::string_view data);

// Chain literals: `2*(a b, r0) - (e, r0) + (b^-1, r0)`. Cell ids fix the
// dimension; `0` is the zero chain of dimension `dim`.
Chain parse_chain(std::string_view text, const CellComplex& complex,
                  std::optional<int> dim = std::nullopt);
std::string format_chain(const Chain& chain, const CellComplex& complex);

// CSV lines `n,value`; an optional header line and blank lines are skipped.
DeltaTable parse_delta_table(std::string_view text);
DeltaTable read_delta_table(const std::filesystem::path& path);

enum class TableKind { kFV, kPsi, kPhi, kFinitePhi, kChain2Bound, kDiskBound };
const char* table_kind_name(TableKind kind);

struct ProfileTable {
  TableKind kind = TableKind::kPsi;
  std::string fingerprint;
  Budget budget;
  std::map<int, ProfileEntry> entries;
};

nlohmann::json budget_to_json(const Budget& budget);
nlohmann::json entry_to_json(const ProfileEntry& entry, const CellComplex* complex);
// `complex` may be null for tables without witnesses.
nlohmann::ordered_json table_to_json(const ProfileTable& table,
                                     const CellComplex* complex);
std::string table_to_csv(const ProfileTable& table);

}  // namespace isoprofile
