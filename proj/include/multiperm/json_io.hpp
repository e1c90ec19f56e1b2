#ifndef MULTIPERM_JSON_IO_HPP
#define MULTIPERM_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "multiperm/blurred.hpp"
#include "multiperm/dsm.hpp"
#include "multiperm/errors.hpp"
#include "multiperm/galois.hpp"
#include "multiperm/notation.hpp"
#include "multiperm/regular.hpp"

// JSON forms.  Multipermutations travel as pipe-notation strings and domain
// elements are 1-based throughout.

namespace multiperm {

using json = nlohmann::json;

inline json to_json(const BinaryRelation& r) { return to_string(r); }

inline json to_json(const std::vector<Multipermutation>& fs) {
  json arr = json::array();
  for (const auto& f : fs) arr.push_back(to_string(f));
  return arr;
}

inline json to_json(const Dsm& m) {
  return {{"n", m.n()}, {"size", m.size()}, {"elements", to_json(m.elements())}};
}

inline json to_json(const Permutation& p) {
  json arr = json::array();
  for (auto v : p.images()) arr.push_back(v + 1);
  return arr;
}

inline json to_json(const Partition& p) {
  json blocks = json::array();
  for (Word b : p.blocks()) {
    json blk = json::array();
    for (std::size_t x = 0; x < p.n(); ++x) {
      if ((b >> x) & 1U) blk.push_back(x + 1);
    }
    blocks.push_back(blk);
  }
  return blocks;
}

inline json to_json(const BpsStructure& b) {
  json group = json::array();
  for (const auto& g : b.group) group.push_back(to_json(g));
  return {{"partition", to_json(b.partition)},
          {"group", group},
          {"full_symmetric_group", b.is_full_symmetric_group()}};
}

inline json vector_json(std::size_t n, Word w) {
  return BoolVec(n, w).to_string();
}

inline json to_json(const KimRoushTrace& tr) {
  json j;
  j["n"] = tr.n;
  json basis = json::array();
  for (Word v : tr.basis.basis) basis.push_back(vector_json(tr.n, v));
  j["basis"] = basis;
  j["basis_equals_row_set"] = tr.basis.equals_row_set();
  json entries = json::array();
  for (const auto& e : tr.entries) {
    json ids = json::array(), ss = json::array();
    for (Word u : e.identification) ids.push_back(vector_json(tr.n, u));
    for (Word s : e.s_candidates) ss.push_back(vector_json(tr.n, s));
    entries.push_back({{"v", vector_json(tr.n, e.v)},
                       {"identification", ids},
                       {"s_candidates", ss}});
  }
  j["basis_entries"] = entries;
  json units = json::array();
  for (const auto& u : tr.units) {
    units.push_back({{"t", vector_json(tr.n, u.t)},
                     {"p", vector_json(tr.n, u.p)},
                     {"b_max", vector_json(tr.n, u.b_max)}});
  }
  j["units"] = units;
  json choices = json::array();
  for (const auto& c : tr.u_choices) {
    json row = json::array();
    for (Word u : c) row.push_back(vector_json(tr.n, u));
    choices.push_back(row);
  }
  j["u_choices"] = choices;
  j["assembled"] = tr.assembled;
  json emitted = json::array();
  for (const auto& x : tr.emitted) emitted.push_back(to_string(x));
  j["emitted"] = emitted;
  return j;
}

/// {n, count, dsms: [[element strings]], hasse: [[lower, upper]],
///  generators: [[element strings]]}
inline json to_json(const DsmLattice& lat) {
  json dsms = json::array(), gens = json::array(), hasse = json::array();
  for (const auto& d : lat.dsms) {
    dsms.push_back(to_json(d.elements()));
    gens.push_back(to_json(dsm_generators(d)));
  }
  for (auto [lo, hi] : lat.hasse) hasse.push_back({lo, hi});
  return {{"n", lat.n},
          {"count", lat.dsms.size()},
          {"dsms", dsms},
          {"hasse", hasse},
          {"generators", gens}};
}

// --- structures -------------------------------------------------------------

/// {"n":3, "relations":[{"name":"E","arity":2,"tuples":[[1,2],[2,1]]}]}
inline json to_json(const FiniteStructure& b) {
  json rels = json::array();
  for (const auto& r : b.relations()) {
    json tuples = json::array();
    for (const auto& t : r.tuples.tuples()) {
      json tup = json::array();
      for (auto x : t) tup.push_back(x + 1);
      tuples.push_back(tup);
    }
    rels.push_back(
        {{"name", r.name}, {"arity", r.tuples.arity()}, {"tuples", tuples}});
  }
  return {{"n", b.n()}, {"relations", rels}};
}

inline FiniteStructure structure_from_json(const json& j) {
  try {
    auto n = j.at("n").get<std::size_t>();
    if (n == 0 || n > kMaxN) throw ParseError("structure: n out of range");
    std::vector<NamedRelation> rels;
    if (j.contains("relations")) {
      for (const auto& r : j.at("relations")) {
        auto arity = r.at("arity").get<std::size_t>();
        if (arity == 0) throw ParseError("structure: arity must be positive");
        TupleSet ts(n, arity);
        for (const auto& t : r.at("tuples")) {
          if (t.size() != arity) {
            throw ParseError("structure: tuple length differs from arity");
          }
          TupleSet::Tuple tup;
          for (const auto& x : t) {
            auto v = x.get<long long>();
            if (v < 1 || static_cast<std::size_t>(v) > n) {
              throw ParseError("structure: tuple entry out of range");
            }
            tup.push_back(static_cast<std::uint8_t>(v - 1));
          }
          ts.insert(tup);
        }
        rels.push_back({r.value("name", "R" + std::to_string(rels.size())),
                        std::move(ts)});
      }
    }
    return FiniteStructure(n, std::move(rels));
  } catch (const json::exception& e) {
    throw ParseError(std::string("structure JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("structure JSON: ") + e.what());
  }
}

inline FiniteStructure parse_structure(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("structure JSON: ") + e.what());
  }
  return structure_from_json(j);
}

/// Generator lists: {"n":3, "generators":["2|1|3", ...]} or a bare array.
inline std::vector<Multipermutation> generators_from_json(const json& j) {
  try {
    const json& arr = j.is_array() ? j : j.at("generators");
    std::vector<Multipermutation> out;
    for (const auto& g : arr) {
      out.push_back(parse_multipermutation(g.get<std::string>()));
    }
    if (j.is_object() && j.contains("n")) {
      auto n = j.at("n").get<std::size_t>();
      for (const auto& g : out) {
        if (g.size() != n) throw ParseError("generator size differs from n");
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("generators JSON: ") + e.what());
  }
}

inline std::vector<Multipermutation> parse_generators(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("generators JSON: ") + e.what());
  }
  return generators_from_json(j);
}

inline json to_json(const ComplexityVerdict& v) {
  json j;
  j["verdict"] = to_string(v.verdict);
  if (v.offending) {
    j["witness"] = {{"offending", to_string(*v.offending)},
                    {"inverse", to_string(inverse(*v.offending))}};
  } else if (v.bps) {
    j["witness"] = to_json(*v.bps);
  }
  j["full_symmetric_group"] = v.full_symmetric_group;
  j["she_size"] = v.she.size();
  return j;
}

}  // namespace multiperm

#endif  // MULTIPERM_JSON_IO_HPP
