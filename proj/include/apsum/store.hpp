#pragma once

#include <filesystem>
#include <vector>

#include "apsum/numbers.hpp"

namespace apsum {

// An append-only journal of certificates: one JSON-lines file per query
// under a directory. Appends never rewrite; loading a query whose journal
// contains two exact claims with different values is an integrity failure.
class ResultStore {
 public:
  explicit ResultStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  // Validates against already-stored exact results before appending.
  void append(const Certificate& cert);

  // All certificates recorded for the query, in append order.
  std::vector<Certificate> load(const NumberQuery& query) const;

  // Best exact value if one is stored.
  std::optional<Certificate> best_exact(const NumberQuery& query) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace apsum
