#ifndef MULTIPERM_CACHE_HPP
#define MULTIPERM_CACHE_HPP

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "multiperm/dsm.hpp"
#include "multiperm/monoid.hpp"
#include "multiperm/notation.hpp"

// On-disk caches for M_n tables and DSM lattices.  Files are text:
//
//   multiperm-monoid v1 n=3 count=265 checksum=<hex>
//   100010001
//   ...
//
// one element per line as its concatenated matrix rows.  Lattice files list
// one DSM per line (space separated pipe notation) followed by "edge i j"
// lines.  A file that fails any check is recomputed and rewritten.

namespace multiperm {

namespace fs = std::filesystem;

/// MULTIPERM_CACHE_DIR, else $XDG_CACHE_HOME/multiperm, else
/// ~/.cache/multiperm.
inline fs::path default_cache_dir() {
  if (const char* d = std::getenv("MULTIPERM_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) {
    return fs::path(x) / "multiperm";
  }
  if (const char* h = std::getenv("HOME"); h && *h) {
    return fs::path(h) / ".cache" / "multiperm";
  }
  return fs::temp_directory_path() / "multiperm-cache";
}

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex(std::uint64_t v) {
  std::ostringstream o;
  o << std::hex << v;
  return o.str();
}

inline std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Splits "header\nbody" and checks the header against `expect` plus the
/// body checksum.  Returns the body.
inline std::optional<std::string> checked_body(const std::string& text,
                                               const std::string& expect) {
  auto nl = text.find('\n');
  if (nl == std::string::npos) return std::nullopt;
  std::string header = text.substr(0, nl);
  std::string body = text.substr(nl + 1);
  return header == expect + " checksum=" + hex(fnv1a(body))
             ? std::optional<std::string>(body)
             : std::nullopt;
}

inline void write_atomically(const fs::path& p, const std::string& text,
                             std::ostream* warn) {
  std::error_code ec;
  fs::create_directories(p.parent_path(), ec);
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) out << text;
    if (!out) {
      if (warn) *warn << "warning: cannot write cache file " << p << "\n";
      return;
    }
  }
  fs::rename(tmp, p, ec);
  if (ec && warn) *warn << "warning: cannot write cache file " << p << "\n";
}

}  // namespace detail

class Cache {
 public:
  /// An empty directory disables caching.
  explicit Cache(fs::path dir, std::ostream* warn = nullptr)
      : dir_(std::move(dir)), warn_(warn) {}

  const fs::path& dir() const noexcept { return dir_; }

  fs::path monoid_path(std::size_t n) const {
    return dir_ / ("monoid-n" + std::to_string(n) + "-v1.txt");
  }
  fs::path lattice_path(std::size_t n) const {
    return dir_ / ("lattice-n" + std::to_string(n) + "-v1.txt");
  }

  MonoidTable monoid(std::size_t n, std::size_t cap) const {
    require_cap(n, cap, "monoid dimension", "--n-cap");
    if (dir_.empty()) return enumerate_multipermutations(n, cap);
    const auto path = monoid_path(n);
    if (auto t = load_monoid(path, n)) return std::move(*t);
    auto table = enumerate_multipermutations(n, cap);
    std::string body;
    for (const auto& f : table) body += to_matrix_string(f, "") + "\n";
    detail::write_atomically(path, monoid_header(n) + " checksum=" +
                                       detail::hex(detail::fnv1a(body)) +
                                       "\n" + body,
                             warn_);
    return table;
  }

  DsmLattice lattice(std::size_t n, bool force) const {
    if (!force) require_cap(n, kLatticeCap, "lattice dimension", "--force");
    if (dir_.empty()) return enumerate_lattice(n, force);
    const auto path = lattice_path(n);
    if (auto l = load_lattice(path, n)) return std::move(*l);
    auto lat = enumerate_lattice(n, force);
    std::string body;
    for (const auto& d : lat.dsms) {
      for (std::size_t k = 0; k < d.elements().size(); ++k) {
        if (k) body += ' ';
        body += to_string(d.elements()[k]);
      }
      body += '\n';
    }
    for (auto [lo, hi] : lat.hasse) {
      body += "edge " + std::to_string(lo) + " " + std::to_string(hi) + "\n";
    }
    detail::write_atomically(
        path,
        lattice_header(n, lat.dsms.size(), lat.hasse.size()) + " checksum=" +
            detail::hex(detail::fnv1a(body)) + "\n" + body,
        warn_);
    return lat;
  }

 private:
  static std::string monoid_header(std::size_t n) {
    return "multiperm-monoid v1 n=" + std::to_string(n) +
           " count=" + std::to_string(multipermutation_count(n));
  }

  static std::string lattice_header(std::size_t n, std::size_t count,
                                    std::size_t edges) {
    return "multiperm-lattice v1 n=" + std::to_string(n) +
           " count=" + std::to_string(count) +
           " edges=" + std::to_string(edges);
  }

  void corrupt(const fs::path& p) const {
    if (warn_) *warn_ << "warning: ignoring corrupt cache file " << p << "\n";
  }

  std::optional<MonoidTable> load_monoid(const fs::path& p,
                                         std::size_t n) const {
    auto text = detail::read_file(p);
    if (!text) return std::nullopt;
    auto body = detail::checked_body(*text, monoid_header(n));
    if (!body) {
      corrupt(p);
      return std::nullopt;
    }
    std::vector<Multipermutation> el;
    std::istringstream in(*body);
    std::string line;
    try {
      while (std::getline(in, line)) {
        if (line.size() != n * n) throw ParseError("bad row");
        std::string m;
        for (std::size_t i = 0; i < n; ++i) {
          if (i) m += ' ';
          m += line.substr(i * n, n);
        }
        auto r = parse_matrix(m);
        if (!r.is_multipermutation()) throw ParseError("not a multipermutation");
        if (!el.empty() && !(el.back().relation() < r)) {
          throw ParseError("out of order");
        }
        el.push_back(Multipermutation::trusted(r));
      }
    } catch (const InvalidArgument&) {
      corrupt(p);
      return std::nullopt;
    }
    if (el.size() != multipermutation_count(n)) {
      corrupt(p);
      return std::nullopt;
    }
    return MonoidTable(n, std::move(el));
  }

  std::optional<DsmLattice> load_lattice(const fs::path& p,
                                         std::size_t n) const {
    auto text = detail::read_file(p);
    if (!text) return std::nullopt;
    auto nl = text->find('\n');
    if (nl == std::string::npos) {
      corrupt(p);
      return std::nullopt;
    }
    std::istringstream hs(text->substr(0, nl));
    std::string magic, version, nf, cf, ef;
    hs >> magic >> version >> nf >> cf >> ef;
    std::size_t count = 0, edges = 0;
    try {
      if (nf != "n=" + std::to_string(n) || cf.rfind("count=", 0) != 0 ||
          ef.rfind("edges=", 0) != 0) {
        throw ParseError("header");
      }
      count = std::stoul(cf.substr(6));
      edges = std::stoul(ef.substr(6));
    } catch (const std::exception&) {
      corrupt(p);
      return std::nullopt;
    }
    auto body = detail::checked_body(*text, lattice_header(n, count, edges));
    if (!body) {
      corrupt(p);
      return std::nullopt;
    }
    DsmLattice lat;
    lat.n = n;
    std::istringstream in(*body);
    std::string line;
    try {
      while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (line.rfind("edge ", 0) == 0) {
          std::size_t lo = 0, hi = 0;
          ls >> tok >> lo >> hi;
          if (!ls || lo >= count || hi >= count) throw ParseError("edge");
          lat.hasse.emplace_back(lo, hi);
          continue;
        }
        std::vector<Multipermutation> el;
        while (ls >> tok) el.push_back(parse_multipermutation(tok));
        Dsm d(n, std::move(el));
        if (d.size() == 0 || !d.contains(BinaryRelation::identity(n))) {
          throw ParseError("dsm");
        }
        lat.dsms.push_back(std::move(d));
      }
    } catch (const InvalidArgument&) {
      corrupt(p);
      return std::nullopt;
    }
    if (lat.dsms.size() != count || lat.hasse.size() != edges ||
        !std::is_sorted(lat.dsms.begin(), lat.dsms.end())) {
      corrupt(p);
      return std::nullopt;
    }
    return lat;
  }

  fs::path dir_;
  std::ostream* warn_ = nullptr;
};

}  // namespace multiperm

#endif  // MULTIPERM_CACHE_HPP
