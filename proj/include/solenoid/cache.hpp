#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "solenoid/homology.hpp"

namespace solenoid {

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

// Content-addressed store of cover homology.  Files are written to a temporary
// name and renamed into place; unreadable or inconsistent files are rebuilt.
class CoverCache {
 public:
  // An empty directory keeps everything in memory.  At most `memory_entries`
  // covers stay resident.
  explicit CoverCache(std::string directory = "", std::size_t memory_entries = 256);

  std::shared_ptr<const CoverHomology> get(const Presentation& pres, const QuotientMap& q);

  // Surface name, prime and canonical serialization of the map as given.
  static std::string key(const Presentation& pres, const QuotientMap& q);

  struct Stats {
    std::size_t memory_hits = 0, disk_hits = 0, builds = 0, recovered = 0, write_failures = 0;
  };
  Stats stats() const;
  // Set when the directory could not be used.
  std::string warning() const;
  const std::string& directory() const { return dir_; }

  // Text form of the stored data; exposed for tests.
  static std::string encode(const std::string& key, const CoverHomology& h);

 private:
  std::shared_ptr<const CoverHomology> load(const std::string& path, const std::string& key,
                                            const Presentation& pres, const QuotientMap& q);
  void store(const std::string& path, const std::string& key, const CoverHomology& h);

  std::string dir_;
  std::size_t capacity_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<const CoverHomology>> memory_;
  std::deque<std::string> order_;
  Stats stats_;
  std::string warning_;
};

}  // namespace solenoid
