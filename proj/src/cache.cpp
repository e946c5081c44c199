#include "solenoid/cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace solenoid {

namespace fs = std::filesystem;

namespace {

constexpr const char* kHeader = "solenoid-cover v1";

void write_matrix(std::ostringstream& out, const char* tag, const IntMatrix& m) {
  out << tag << ' ' << m.rows << ' ' << m.cols;
  for (long long x : m.a) out << ' ' << x;
  out << '\n';
}

IntMatrix read_matrix(std::istringstream& in, const char* tag) {
  std::string t;
  std::size_t r = 0, c = 0;
  if (!(in >> t >> r >> c) || t != tag) throw std::runtime_error("bad matrix");
  IntMatrix m(r, c);
  for (auto& x : m.a)
    if (!(in >> x)) throw std::runtime_error("short matrix");
  return m;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += hex[md[i] >> 4], out += hex[md[i] & 15];
  return out;
}

CoverCache::CoverCache(std::string directory, std::size_t memory_entries)
    : dir_(std::move(directory)), capacity_(std::max<std::size_t>(memory_entries, 1)) {
  if (dir_.empty()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_) || access(dir_.c_str(), W_OK) != 0) {
    warning_ = "cache directory " + dir_ + " is not writable; using memory only";
    dir_.clear();
  }
}

std::string CoverCache::key(const Presentation& pres, const QuotientMap& q) {
  return pres.signature().name() + "|p" + std::to_string(q.prime) + "|" + canonical_serialization(q);
}

std::string CoverCache::encode(const std::string& key, const CoverHomology& h) {
  std::ostringstream body;
  body << "cotree " << h.basis.cotree_edges.size();
  for (int e : h.basis.cotree_edges) body << ' ' << e;
  body << '\n';
  for (const auto& phi : h.basis.cocycles) {
    body << "cocycle " << phi.size();
    for (auto [e, v] : phi) body << ' ' << e << ' ' << v;
    body << '\n';
  }
  write_matrix(body, "cup", h.form.cup);
  write_matrix(body, "form", h.form.matrix);
  std::string b = body.str();
  return std::string(kHeader) + "\n" + key + "\n" + sha256_hex(key + "\n" + b) + "\n" + b;
}

std::shared_ptr<const CoverHomology> CoverCache::load(const std::string& path, const std::string& key,
                                                      const Presentation& pres, const QuotientMap& q) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return nullptr;
  std::stringstream ss;
  ss << f.rdbuf();
  std::string text = ss.str();
  try {
    std::istringstream in(text);
    std::string header, stored_key, digest;
    if (!std::getline(in, header) || header != kHeader) throw std::runtime_error("header");
    if (!std::getline(in, stored_key) || stored_key != key) throw std::runtime_error("key");
    if (!std::getline(in, digest)) throw std::runtime_error("digest");
    std::string body = text.substr(static_cast<std::size_t>(in.tellg()));
    if (sha256_hex(key + "\n" + body) != digest) throw std::runtime_error("checksum");
    std::istringstream bin(body);
    std::string tag;
    std::size_t n = 0;
    if (!(bin >> tag >> n) || tag != "cotree") throw std::runtime_error("cotree");
    std::vector<int> cotree(n);
    for (auto& e : cotree) bin >> e;
    std::vector<SparseCochain> cocycles(n);
    for (auto& phi : cocycles) {
      std::size_t len = 0;
      if (!(bin >> tag >> len) || tag != "cocycle") throw std::runtime_error("cocycle");
      phi.resize(len);
      for (auto& [e, v] : phi) bin >> e >> v;
    }
    IntersectionForm form;
    form.cup = read_matrix(bin, "cup");
    form.matrix = read_matrix(bin, "form");
    if (!bin) throw std::runtime_error("truncated");
    CoverDescription cover(pres, q, Normality::optional);
    for (int e : cotree)
      if (e < 0 || e >= cover.edge_count() || cover.schreier_index(e) < 0) throw std::runtime_error("edge");
    for (const auto& phi : cocycles)
      for (auto [e, v] : phi)
        if (e < 0 || e >= cover.edge_count()) throw std::runtime_error("edge");
    auto h = std::make_shared<CoverHomology>(std::move(cover), std::move(cotree), std::move(cocycles), form);
    // Duality and the form relation are rechecked before the entry is used.
    for (int j = 0; j < h->basis.rank; ++j) {
      IntVector v = h->basis.evaluate(h->basis.cycles[static_cast<std::size_t>(j)]);
      for (int i = 0; i < h->basis.rank; ++i)
        if (v[static_cast<std::size_t>(i)] != (i == j)) throw std::runtime_error("duality");
    }
    if (static_cast<int>(form.matrix.rows) != h->basis.rank ||
        multiply(form.cup, form.matrix) != [&] {
          IntMatrix m = identity_matrix(form.matrix.rows);
          for (auto& x : m.a) x = -x;
          return m;
        }())
      throw std::runtime_error("form");
    return h;
  } catch (const std::exception&) {
    std::lock_guard<std::mutex> lock(mu_);
    ++stats_.recovered;
    return nullptr;
  }
}

void CoverCache::store(const std::string& path, const std::string& key, const CoverHomology& h) {
  static std::atomic<unsigned long> counter{0};
  std::string tmp = path + ".tmp." + std::to_string(getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << encode(key, h);
    if (!f) {
      std::lock_guard<std::mutex> lock(mu_);
      ++stats_.write_failures;
      std::error_code ec;
      fs::remove(tmp, ec);
      return;
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::lock_guard<std::mutex> lock(mu_);
    ++stats_.write_failures;
    fs::remove(tmp, ec);
  }
}

std::shared_ptr<const CoverHomology> CoverCache::get(const Presentation& pres, const QuotientMap& q) {
  const std::string k = key(pres, q);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memory_.find(k);
    if (it != memory_.end()) {
      ++stats_.memory_hits;
      return it->second;
    }
  }
  std::shared_ptr<const CoverHomology> h;
  std::string path;
  if (!dir_.empty()) {
    path = (fs::path(dir_) / (sha256_hex(k) + ".cover")).string();
    h = load(path, k, pres, q);
    if (h) {
      std::lock_guard<std::mutex> lock(mu_);
      ++stats_.disk_hits;
    }
  }
  if (!h) {
    h = std::make_shared<CoverHomology>(CoverDescription(pres, q, Normality::optional));
    {
      std::lock_guard<std::mutex> lock(mu_);
      ++stats_.builds;
    }
    if (!path.empty()) store(path, k, *h);
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = memory_.emplace(k, h);
  if (inserted) {
    order_.push_back(k);
    while (order_.size() > capacity_) {
      memory_.erase(order_.front());
      order_.pop_front();
    }
  }
  return it->second;
}

CoverCache::Stats CoverCache::stats() const {
  std::lock_guard<std::mutex> lock(mu_);
  return stats_;
}

std::string CoverCache::warning() const {
  std::lock_guard<std::mutex> lock(mu_);
  return warning_;
}

}  // namespace solenoid
