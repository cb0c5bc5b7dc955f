#include "apsum/store.hpp"

#include <fstream>

#include "apsum/errors.hpp"
#include "apsum/json_io.hpp"

namespace apsum {

ResultStore::ResultStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::vector<Certificate> ResultStore::load(const NumberQuery& query) const {
  std::vector<Certificate> certs;
  const auto path = dir_ / (query.file_stem() + ".jsonl");
  std::ifstream in(path);
  if (!in) return certs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Certificate cert;
    try {
      cert = certificate_from_json(Json::parse(line));
    } catch (const std::exception& e) {
      throw IntegrityError(path.string() + ":" + std::to_string(line_no) +
                           ": unreadable certificate: " + e.what());
    }
    if (!(cert.query == query))
      throw IntegrityError(path.string() + ": certificate for " + cert.query.display() +
                           " filed under " + query.display());
    certs.push_back(std::move(cert));
  }
  // Conflicting exact values invalidate the journal.
  std::optional<std::uint64_t> exact;
  for (const Certificate& cert : certs) {
    if (cert.claim != Claim::Exact) continue;
    if (exact && *exact != cert.value)
      throw IntegrityError(path.string() + ": conflicting exact values " +
                           std::to_string(*exact) + " and " + std::to_string(cert.value));
    exact = cert.value;
  }
  return certs;
}

void ResultStore::append(const Certificate& cert) {
  const auto existing = load(cert.query);  // raises on a corrupt journal
  if (cert.claim == Claim::Exact) {
    for (const Certificate& old : existing) {
      if (old.claim == Claim::Exact && old.value != cert.value)
        throw IntegrityError("refusing to append exact " + cert.query.display() + "=" +
                             std::to_string(cert.value) + ": store has " +
                             std::to_string(old.value));
    }
  }
  const auto path = dir_ / (cert.query.file_stem() + ".jsonl");
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for append");
  out << to_json(cert).dump() << "\n";
}

std::optional<Certificate> ResultStore::best_exact(const NumberQuery& query) const {
  for (const Certificate& cert : load(query))
    if (cert.claim == Claim::Exact) return cert;
  return std::nullopt;
}

}  // namespace apsum
