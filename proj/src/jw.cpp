#include "skein/jw.hpp"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include "skein/params.hpp"

namespace skein {

namespace {

namespace fs = std::filesystem;

std::mutex cache_mu;
std::string cache_dir_value;
bool cache_dir_initialized = false;
std::map<std::pair<int, int>, TLElement> memo;

std::string cache_dir_locked() {
  if (!cache_dir_initialized) {
    const char* env = std::getenv("SKEIN_CACHE_DIR");
    cache_dir_value = env ? env : "";
    cache_dir_initialized = true;
  }
  return cache_dir_value;
}

fs::path cache_file(const std::string& dir, int M, int m) {
  return fs::path(dir) /
         ("jw_M" + std::to_string(M) + "_m" + std::to_string(m) + ".txt");
}

std::optional<TLElement> load_from_disk(const FieldPtr& field, int m,
                                        const std::string& dir) {
  std::ifstream in(cache_file(dir, field->M(), m));
  if (!in) return std::nullopt;
  std::string tag, version;
  int M = 0, mm = 0, degree = 0, nterms = 0;
  in >> tag >> version;
  if (tag != "skein-jw-cache" || version != "v1") return std::nullopt;
  in >> tag >> M;
  if (tag != "M" || M != field->M()) return std::nullopt;
  in >> tag >> mm;
  if (tag != "m" || mm != m) return std::nullopt;
  in >> tag >> degree;
  if (tag != "degree" || degree != field->degree()) return std::nullopt;
  in >> tag >> nterms;
  if (tag != "terms" || nterms < 0) return std::nullopt;
  TLElement x(field, m, m);
  for (int i = 0; i < nterms; ++i) {
    in >> tag;
    if (tag != "d") return std::nullopt;
    TLDiagram d;
    d.b = d.t = m;
    d.match.resize(2 * m);
    for (auto& v : d.match)
      if (!(in >> v)) return std::nullopt;
    in >> tag;
    if (tag != "c") return std::nullopt;
    std::vector<Rat> coeffs(degree);
    for (auto& c : coeffs) {
      std::string s;
      if (!(in >> s)) return std::nullopt;
      try {
        c = Rat(s);
      } catch (const std::exception&) {
        return std::nullopt;
      }
      c.canonicalize();
    }
    if (!d.involution() || !d.planar()) return std::nullopt;
    x.add_term(d, Cyclo(field, std::move(coeffs)));
  }
  return x;
}

void save_to_disk(const TLElement& x, int m, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  fs::path final_path = cache_file(dir, x.field()->M(), m);
  fs::path tmp_path = final_path;
  tmp_path += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp_path);
    if (!out) return;
    out << "skein-jw-cache v1\n";
    out << "M " << x.field()->M() << "\n";
    out << "m " << m << "\n";
    out << "degree " << x.field()->degree() << "\n";
    out << "terms " << x.terms().size() << "\n";
    for (const auto& [d, c] : x.terms()) {
      out << "d";
      for (int v : d.match) out << ' ' << v;
      out << " c";
      for (const auto& r : c.coeffs()) out << ' ' << r.get_str();
      out << "\n";
    }
  }
  fs::rename(tmp_path, final_path, ec);
  if (ec) fs::remove(tmp_path, ec);
}

TLElement compute_jw(const FieldPtr& field, int m) {
  if (m <= 0) return TLElement::identity(field, 0);
  Cyclo delta = quantum_int(field, 2);
  TLElement f = TLElement::identity(field, 1);
  for (int k = 2; k <= m; ++k) {
    Cyclo qk = quantum_int(field, k);
    if (qk.is_zero())
      throw SingularRecursion("[" + std::to_string(k) +
                              "] vanishes; idempotent with " +
                              std::to_string(k) + " strands does not exist");
    Cyclo coeff = quantum_int(field, k - 1) * qk.inverse();
    TLElement ft = tl_tensor(f, TLElement::identity(field, 1));
    TLElement mid = tl_compose(TLElement::e(field, k, k - 2), ft, delta);
    f = ft - tl_compose(ft, mid, delta) * coeff;
  }
  return f;
}

}  // namespace

void set_cache_dir(const std::string& dir) {
  std::lock_guard<std::mutex> lock(cache_mu);
  cache_dir_value = dir;
  cache_dir_initialized = true;
}

std::string cache_dir() {
  std::lock_guard<std::mutex> lock(cache_mu);
  return cache_dir_locked();
}

int clear_disk_cache() {
  std::string dir = cache_dir();
  if (dir.empty()) return 0;
  int removed = 0;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    std::string name = entry.path().filename().string();
    if (name.rfind("jw_M", 0) == 0 && entry.path().extension() == ".txt") {
      if (fs::remove(entry.path(), ec)) ++removed;
    }
  }
  return removed;
}

void clear_memory_cache() {
  std::lock_guard<std::mutex> lock(cache_mu);
  memo.clear();
}

TLElement jones_wenzl(const FieldPtr& field, int m) {
  std::pair<int, int> key{field->M(), m};
  std::string dir;
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    dir = cache_dir_locked();
  }
  if (!dir.empty()) {
    if (auto loaded = load_from_disk(field, m, dir)) {
      std::lock_guard<std::mutex> lock(cache_mu);
      return memo.emplace(key, std::move(*loaded)).first->second;
    }
  }
  TLElement f = compute_jw(field, m);
  if (!dir.empty()) save_to_disk(f, m, dir);
  std::lock_guard<std::mutex> lock(cache_mu);
  return memo.emplace(key, std::move(f)).first->second;
}

}  // namespace skein
