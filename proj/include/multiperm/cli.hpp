#ifndef MULTIPERM_CLI_HPP
#define MULTIPERM_CLI_HPP

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multiperm/blurred.hpp"
#include "multiperm/cache.hpp"
#include "multiperm/dsm.hpp"
#include "multiperm/errors.hpp"
#include "multiperm/galois.hpp"
#include "multiperm/green.hpp"
#include "multiperm/json_io.hpp"
#include "multiperm/monoid.hpp"
#include "multiperm/notation.hpp"
#include "multiperm/regular.hpp"

// The multiperm command-line tool.  Exit codes: 0 success, 1 other error,
// 2 parse error, 3 cap exceeded, 4 a library invariant was falsified.

namespace multiperm::cli {

enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kParse = 2,
  kCap = 3,
  kFalsified = 4,
};

struct Config {
  std::string cache_dir;
  bool no_cache = false;
  std::optional<std::size_t> n_cap;
  bool force = false;
  bool json = false;
  std::size_t threads = 0;

  std::size_t cap(std::size_t fallback) const { return n_cap.value_or(fallback); }

  Cache cache(std::ostream& err) const {
    if (no_cache) return Cache({}, &err);
    return Cache(cache_dir.empty() ? default_cache_dir() : fs::path(cache_dir),
                 &err);
  }
};

namespace detail {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string yes(bool b) { return b ? "true" : "false"; }

inline std::vector<BinaryRelation> parse_all(
    const std::vector<std::string>& texts) {
  std::vector<BinaryRelation> out;
  for (const auto& t : texts) out.push_back(parse_any(t));
  return out;
}

inline Multipermutation as_multipermutation(const BinaryRelation& r) {
  auto f = Multipermutation::from(r);
  if (!f) throw ParseError("'" + to_string(r) + "' is not a multipermutation");
  return *f;
}

/// Generators from a JSON file and/or positional arguments.  The domain size
/// comes from -n when given, otherwise from the generators.
inline std::pair<std::size_t, std::vector<Multipermutation>> gather_gens(
    std::size_t n, const std::string& file,
    const std::vector<std::string>& texts) {
  std::vector<Multipermutation> gens;
  if (!file.empty()) gens = parse_generators(read_text(file));
  for (const auto& r : parse_all(texts)) gens.push_back(as_multipermutation(r));
  if (n == 0) {
    if (gens.empty()) throw InvalidArgument("give -n or at least one generator");
    n = gens.front().size();
  }
  for (const auto& g : gens) {
    if (g.size() != n) throw DimensionMismatch(n, g.size());
  }
  return {n, std::move(gens)};
}

inline void print_list(std::ostream& out,
                       const std::vector<Multipermutation>& fs) {
  for (const auto& f : fs) out << to_string(f) << "\n";
}

inline void print_matrices(std::ostream& out,
                           const std::vector<BinaryRelation>& xs) {
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out << "\n";
    out << to_matrix_string(xs[k]) << "\n";
  }
}

}  // namespace detail

/// Runs the tool on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  Config cfg;
  CLI::App app{"Exact computation with multipermutations and down-shop-monoids",
               "multiperm"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", cfg.json, "Machine-readable JSON output");
  app.add_option("--n-cap", cfg.n_cap, "Raise the dimension bound")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cfg.cache_dir, "Cache directory");
  app.add_flag("--no-cache", cfg.no_cache, "Do not read or write caches");
  app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  app.add_flag("--force", cfg.force, "Allow expensive computations");

  std::vector<std::string> rels;
  std::size_t n = 0;
  std::string gens_file, structure_file, dot_path, method, partition_text,
      perm_text;
  bool flag_count = false, flag_dot = false, flag_trace = false,
       flag_bn = false, flag_list = false, flag_matrix = false,
       flag_eggbox = false, flag_count_labels = false;

  // mp
  auto* mp = app.add_subcommand("mp", "Single multipermutations");
  mp->require_subcommand(1);
  auto* mp_compose = mp->add_subcommand("compose", "Product a then b then ...");
  mp_compose->add_option("relations", rels, "Relations in order")
      ->required()
      ->expected(2, -1);
  mp_compose->add_flag("--matrix", flag_matrix, "Print the matrix form");
  auto* mp_inverse = mp->add_subcommand("inverse", "Transpose");
  mp_inverse->add_option("relation", rels)->required()->expected(1);
  mp_inverse->add_flag("--matrix", flag_matrix, "Print the matrix form");
  auto* mp_check = mp->add_subcommand("check", "Structural predicates");
  mp_check->add_option("relation", rels)->required()->expected(1);
  mp_check->add_flag("--dot", flag_dot, "Print the digraph in DOT");

  // monoid
  auto* monoid = app.add_subcommand("monoid", "The monoid M_n");
  monoid->require_subcommand(1);
  auto* mo_enum = monoid->add_subcommand("enum", "List M_n");
  mo_enum->add_option("-n", n)->required()->check(CLI::PositiveNumber);
  mo_enum->add_flag("--count", flag_count, "Print only |M_n|");
  auto* mo_closure = monoid->add_subcommand("closure", "Generated submonoid");
  mo_closure->add_option("-n", n)->check(CLI::PositiveNumber);
  mo_closure->add_option("--gens", gens_file, "Generator JSON file");
  mo_closure->add_option("generators", rels);
  mo_closure->add_flag("--list", flag_list, "List the elements");
  auto* mo_gen = monoid->add_subcommand("generators",
                                        "Whether a set generates M_n");
  mo_gen->add_option("-n", n)->check(CLI::PositiveNumber);
  mo_gen->add_option("--gens", gens_file, "Generator JSON file");
  mo_gen->add_option("generators", rels);
  auto* mo_primes = monoid->add_subcommand("primes", "Prime elements");
  mo_primes->add_option("-n", n)->required()->check(CLI::PositiveNumber);

  // green
  auto* green = app.add_subcommand("green", "Green's relations");
  green->require_subcommand(1);
  auto* gr_classify = green->add_subcommand("classify", "Class counts on M_n");
  gr_classify->add_option("-n", n)->required()->check(CLI::PositiveNumber);
  gr_classify->add_flag("--eggbox", flag_eggbox, "Per D-class summary");
  auto* gr_test = green->add_subcommand("test", "Relations between a and b");
  gr_test->add_option("relations", rels)->required()->expected(2);

  // regular
  auto* regular = app.add_subcommand("regular", "Regularity and inverses");
  regular->require_subcommand(1);
  auto* re_check = regular->add_subcommand("check", "Regularity summary");
  re_check->add_option("relation", rels)->required()->expected(1);
  auto* re_inv = regular->add_subcommand("inverses", "Inverses of a");
  re_inv->add_option("relation", rels)->required()->expected(1);
  method = "kim-roush";
  re_inv->add_option("--method", method)
      ->check(CLI::IsMember({"kim-roush", "brute", "theorem"}));
  re_inv->add_flag("--trace", flag_trace, "Dump the construction as JSON");
  re_inv->add_flag("--bn", flag_bn, "Inverses in B_n rather than M_n");

  // dsm
  auto* dsm = app.add_subcommand("dsm", "Down-shop-monoids");
  dsm->require_subcommand(1);
  auto* ds_closure = dsm->add_subcommand("closure", "Generated DSM");
  ds_closure->add_option("-n", n)->check(CLI::PositiveNumber);
  ds_closure->add_option("--gens", gens_file, "Generator JSON file");
  ds_closure->add_option("generators", rels);
  ds_closure->add_flag("--count", flag_count, "Print only the size");
  auto* ds_lattice = dsm->add_subcommand("lattice", "The lattice F_n");
  ds_lattice->add_option("-n", n)->required()->check(CLI::PositiveNumber);
  ds_lattice->add_flag("--count", flag_count, "Print only |F_n|");
  ds_lattice->add_option("--dot", dot_path, "Write the Hasse diagram ('-' = stdout)");
  ds_lattice->add_flag("--size-labels", flag_count_labels,
                       "Label DOT nodes by size");
  ds_lattice->add_flag("--force", cfg.force, "Allow n > 3");
  auto* ds_bps = dsm->add_subcommand("bps-check", "Blurred permutation subgroup");
  ds_bps->add_option("-n", n)->check(CLI::PositiveNumber);
  ds_bps->add_option("--gens", gens_file, "Generator JSON file");
  ds_bps->add_option("generators", rels);

  // galois
  auto* galois = app.add_subcommand("galois", "Shes of finite structures");
  galois->require_subcommand(1);
  auto* ga_she = galois->add_subcommand("she", "List shE(B)");
  ga_she->add_option("--structure", structure_file, "Structure JSON file")
      ->required();
  auto* ga_classify = galois->add_subcommand("classify", "Complexity verdict");
  ga_classify->add_option("--structure", structure_file, "Structure JSON file")
      ->required();

  // blurred
  auto* blurred = app.add_subcommand("blurred", "Blurred permutations");
  blurred->require_subcommand(1);
  auto* bl_check = blurred->add_subcommand("check", "Recognise a blur");
  bl_check->add_option("relation", rels)->required()->expected(1);
  auto* bl_make = blurred->add_subcommand("make", "Blur a block permutation");
  bl_make->add_option("--partition", partition_text, "e.g. {1,2|3}")->required();
  bl_make->add_option("--perm", perm_text, "e.g. (1 2) or 2,1")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kParse;
  }

  try {
    json j;
    // ---------------------------------------------------------------- mp
    if (mp_compose->parsed()) {
      auto rs = detail::parse_all(rels);
      BinaryRelation r = rs.front();
      for (std::size_t k = 1; k < rs.size(); ++k) r = then(r, rs[k]);
      if (cfg.json) {
        j = {{"result", to_string(r)}, {"multipermutation", r.is_multipermutation()}};
      } else {
        out << (flag_matrix ? to_matrix_string(r) : to_string(r)) << "\n";
      }
    } else if (mp_inverse->parsed()) {
      auto r = inverse(parse_any(rels.front()));
      if (cfg.json) {
        j = {{"result", to_string(r)}};
      } else {
        out << (flag_matrix ? to_matrix_string(r) : to_string(r)) << "\n";
      }
    } else if (mp_check->parsed()) {
      auto r = parse_any(rels.front());
      if (flag_dot) {
        out << to_dot(r);
        return kOk;
      }
      j = {{"relation", to_string(r)},
           {"multipermutation", r.is_multipermutation()},
           {"permutation", r.is_permutation()},
           {"reflexive", is_reflexive(r)},
           {"symmetric", is_symmetric(r)},
           {"transitive", is_transitive(r)},
           {"difunctional", is_difunctional(r)},
           {"hall", is_hall(r)},
           {"blurred", r.is_multipermutation() && is_blurred(r)}};
      if (!cfg.json) {
        out << "relation: " << to_string(r) << "\n";
        for (const char* k : {"multipermutation", "permutation", "reflexive",
                              "symmetric", "transitive", "difunctional",
                              "hall", "blurred"}) {
          out << k << ": " << detail::yes(j[k].get<bool>()) << "\n";
        }
        j = nullptr;
      }
    }
    // ------------------------------------------------------------ monoid
    else if (mo_enum->parsed()) {
      auto table = cfg.cache(err).monoid(n, cfg.cap(kDefaultMonoidCap));
      if (cfg.json) {
        j = {{"n", n}, {"count", table.size()}};
        if (!flag_count) j["elements"] = to_json(table.elements());
      } else if (flag_count) {
        out << table.size() << "\n";
      } else {
        detail::print_list(out, table.elements());
      }
    } else if (mo_closure->parsed()) {
      auto [dim, gens] = detail::gather_gens(n, gens_file, rels);
      require_cap(dim, cfg.cap(kDefaultMonoidCap), "monoid dimension", "--n-cap");
      auto cl = closure(dim, gens);
      if (cfg.json) {
        j = {{"n", dim}, {"size", cl.size()}};
        if (flag_list) j["elements"] = to_json(cl);
      } else {
        out << cl.size() << "\n";
        if (flag_list) detail::print_list(out, cl);
      }
    } else if (mo_gen->parsed()) {
      auto [dim, gens] = detail::gather_gens(n, gens_file, rels);
      auto table = cfg.cache(err).monoid(dim, cfg.cap(kDefaultMonoidCap));
      auto rep = is_generating_set(table, gens);
      if (cfg.json) {
        j = {{"generates", rep.generates},
             {"closure_size", rep.closure_size},
             {"monoid_size", rep.monoid_size}};
        if (rep.missing) j["missing"] = to_string(*rep.missing);
      } else {
        out << detail::yes(rep.generates) << "\n";
        if (rep.missing) {
          out << "missing " << to_string(*rep.missing) << " (closure "
              << rep.closure_size << " of " << rep.monoid_size << ")\n";
        }
      }
    } else if (mo_primes->parsed()) {
      auto table = cfg.cache(err).monoid(n, cfg.cap(kPrimeCap));
      auto classes = prime_elements(table, cfg.threads, cfg.cap(kPrimeCap));
      if (cfg.json) {
        j = json::array();
        for (const auto& c : classes) {
          j.push_back({{"representative", to_string(c.representative)},
                       {"size", c.members.size()},
                       {"members", to_json(c.members)}});
        }
      } else {
        for (const auto& c : classes) {
          out << to_string(c.representative) << " " << c.members.size() << "\n";
        }
      }
    }
    // ------------------------------------------------------------- green
    else if (gr_classify->parsed()) {
      auto table = cfg.cache(err).monoid(n, cfg.cap(kGreenCap));
      auto g = classify(table, cfg.cap(kGreenCap));
      auto boxes = eggbox(g);
      if (cfg.json) {
        j = {{"n", n}, {"L", g.l_count}, {"R", g.r_count},
             {"H", g.h_count}, {"D", g.d_count}};
        if (flag_eggbox) {
          j["d_classes"] = json::array();
          for (const auto& b : boxes) {
            j["d_classes"].push_back({{"size", b.size},
                                      {"r_classes", b.r_classes},
                                      {"l_classes", b.l_classes},
                                      {"h_size", b.h_size}});
          }
        }
      } else {
        out << "L " << g.l_count << "\nR " << g.r_count << "\nH " << g.h_count
            << "\nD " << g.d_count << "\n";
        if (flag_eggbox) {
          for (const auto& b : boxes) {
            out << "D" << b.d_class << " size " << b.size << " rows "
                << b.r_classes << " cols " << b.l_classes << " H " << b.h_size
                << "\n";
          }
        }
      }
    } else if (gr_test->parsed()) {
      auto a = detail::as_multipermutation(parse_any(rels[0]));
      auto b = detail::as_multipermutation(parse_any(rels[1]));
      require_same_dim(a.size(), b.size());
      auto table = cfg.cache(err).monoid(a.size(), cfg.cap(kGreenCap));
      j = {{"L", green_L(a, b)}, {"R", green_R(a, b)}, {"H", green_H(a, b)},
           {"D", green_D(a, b, table)}};
      if (!cfg.json) {
        for (const char* k : {"L", "R", "H", "D"}) {
          out << k << " " << detail::yes(j[k].get<bool>()) << "\n";
        }
        j = nullptr;
      }
    }
    // ----------------------------------------------------------- regular
    else if (re_check->parsed()) {
      auto a = parse_any(rels.front());
      bool bn = schein_regular(a);
      j = {{"relation", to_string(a)}, {"regular_in_Bn", bn}};
      if (bn) j["greatest_inverse"] = to_string(greatest_inverse(a));
      if (a.is_multipermutation()) {
        auto v = has_inverse_in_Mn(a);
        j["inverse_in_Mn"] = v.has_inverse;
        if (!v.has_inverse) j["reason"] = to_string(v.reason);
        j["completely_regular"] =
            is_completely_regular(a, cfg.cap(kCompletelyRegularCap));
      }
      if (!cfg.json) {
        for (auto& [k, v] : j.items()) {
          out << k << ": "
              << (v.is_boolean() ? detail::yes(v.get<bool>())
                                 : v.get<std::string>())
              << "\n";
        }
        j = nullptr;
      }
    } else if (re_inv->parsed()) {
      auto a = parse_any(rels.front());
      std::vector<BinaryRelation> found;
      if (method == "theorem") {
        auto v = has_inverse_in_Mn(detail::as_multipermutation(a));
        if (cfg.json) {
          j = {{"has_inverse", v.has_inverse}};
          if (!v.has_inverse) {
            j["reason"] = to_string(v.reason);
            j["witness"] = BoolVec(a.size(), v.witness).to_string();
          }
        } else {
          out << detail::yes(v.has_inverse) << "\n";
          if (!v.has_inverse) {
            out << to_string(v.reason) << ": "
                << BoolVec(a.size(), v.witness).to_string() << "\n";
          }
        }
        return kOk;
      }
      if (method == "kim-roush") {
        KimRoushTrace tr;
        found = kim_roush_inverses(a, &tr,
                                   flag_bn ? InverseTarget::BooleanMatrices
                                           : InverseTarget::Multipermutations);
        if (flag_trace) {
          out << to_json(tr).dump(2) << "\n";
          return kOk;
        }
      } else if (flag_bn) {
        found = bn_inverses(a);
      } else {
        auto table = cfg.cache(err).monoid(a.size(), cfg.cap(kDefaultMonoidCap));
        for (const auto& x : brute_inverses(a, table)) found.push_back(x);
      }
      if (cfg.json) {
        j = json::array();
        for (const auto& x : found) j.push_back(to_string(x));
      } else {
        detail::print_matrices(out, found);
      }
    }
    // --------------------------------------------------------------- dsm
    else if (ds_closure->parsed()) {
      auto [dim, gens] = detail::gather_gens(n, gens_file, rels);
      require_cap(dim, cfg.cap(kDefaultMonoidCap), "DSM dimension", "--n-cap");
      auto m = dsm_closure(dim, gens);
      if (cfg.json) {
        j = to_json(m);
      } else if (flag_count) {
        out << m.size() << "\n";
      } else {
        detail::print_list(out, m.elements());
      }
    } else if (ds_lattice->parsed()) {
      auto lat = cfg.cache(err).lattice(n, cfg.force);
      if (!dot_path.empty()) {
        auto dot = lattice_to_dot(lat, flag_count_labels);
        if (dot_path == "-") {
          out << dot;
        } else {
          std::ofstream f(dot_path);
          if (!(f << dot)) throw InvalidArgument("cannot write '" + dot_path + "'");
        }
      }
      if (cfg.json) {
        j = flag_count ? json{{"n", n}, {"count", lat.dsms.size()}} : to_json(lat);
      } else if (flag_count) {
        out << lat.dsms.size() << "\n";
      } else if (dot_path != "-") {
        for (std::size_t i = 0; i < lat.dsms.size(); ++i) {
          out << i << " " << lat.dsms[i].size();
          for (const auto& g : dsm_generators(lat.dsms[i])) out << " " << to_string(g);
          out << "\n";
        }
        for (auto [lo, hi] : lat.hasse) out << "edge " << lo << " " << hi << "\n";
      }
    } else if (ds_bps->parsed()) {
      auto [dim, gens] = detail::gather_gens(n, gens_file, rels);
      require_cap(dim, cfg.cap(kDefaultMonoidCap), "DSM dimension", "--n-cap");
      auto m = dsm_closure(dim, gens);
      auto b = is_bps(m);
      if (cfg.json) {
        j = {{"self_inverse", b.has_value()}, {"size", m.size()}};
        if (b) j["bps"] = to_json(*b);
      } else {
        out << "self-inverse: " << detail::yes(b.has_value()) << "\n";
        if (b) {
          out << "partition: " << b->partition.to_string() << "\ngroup:";
          for (const auto& g : b->group) out << " " << g.to_cycle_string();
          out << "\nfull symmetric group: "
              << detail::yes(b->is_full_symmetric_group()) << "\n";
        }
      }
    }
    // ------------------------------------------------------------ galois
    else if (ga_she->parsed() || ga_classify->parsed()) {
      auto b = parse_structure(detail::read_text(structure_file));
      auto table = cfg.cache(err).monoid(b.n(), cfg.cap(kSheCap));
      if (ga_she->parsed()) {
        auto she = she_set(b, table, cfg.threads);
        if (cfg.json) {
          j = to_json(she);
        } else {
          detail::print_list(out, she.elements());
        }
      } else {
        auto v = classify(b, cfg.cap(kSheCap));
        if (cfg.json) {
          j = to_json(v);
        } else {
          out << to_string(v.verdict) << "\n";
          if (v.offending) {
            out << "offending " << to_string(*v.offending) << " (inverse "
                << to_string(inverse(*v.offending)) << " is not a she)\n";
          } else if (v.bps) {
            out << "partition " << v.bps->partition.to_string() << " group order "
                << v.bps->group.size() << " full symmetric group "
                << detail::yes(v.full_symmetric_group) << "\n";
          }
        }
      }
    }
    // ----------------------------------------------------------- blurred
    else if (bl_check->parsed()) {
      auto f = parse_any(rels.front());
      auto s = f.is_multipermutation() ? recognize_blur(f) : std::nullopt;
      if (cfg.json) {
        j = {{"blurred", s.has_value()}};
        if (s) {
          j["partition"] = to_json(s->partition);
          j["permutation"] = to_json(s->perm);
        }
      } else {
        out << detail::yes(s.has_value()) << "\n";
        if (s) {
          out << "partition " << s->partition.to_string() << " permutation "
              << s->perm.to_image_string() << "\n";
        }
      }
    } else if (bl_make->parsed()) {
      auto p = Partition::parse(partition_text);
      auto g = Permutation::parse(perm_text, p.block_count());
      auto f = blur(g, p);
      if (cfg.json) {
        j = {{"result", to_string(f)}};
      } else {
        out << to_string(f) << "\n";
      }
    }
    if (cfg.json && !j.is_null()) out << j.dump(2) << "\n";
    return kOk;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (use " << e.flag() << " to override)\n";
    return kCap;
  } catch (const InvariantFalsified& e) {
    err << "falsified: " << e.what() << "\n";
    return kFalsified;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace multiperm::cli

#endif  // MULTIPERM_CLI_HPP
