#include "emorse/spec_format.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <json.hpp>

namespace emorse {

using nlohmann::json;

SpecError::SpecError(std::vector<SpecIssue> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid spec";
        for (const auto& i : issues) msg += "\n  " + i.location + ": " + i.message;
        return msg;
      }()),
      issues_(std::move(issues)) {}

MonodromyLocalSystem make_system(const FiniteGroup& g, const std::string& kind) {
  if (kind == "left-regular") return left_regular_system(g);
  if (kind == "conjugation") return conjugation_system(g);
  if (kind == "end-mon") return end_mon_system(g);
  if (kind == "trivial") return trivial_system(g);
  throw std::invalid_argument("unknown local system '" + kind + "'");
}

EnrichedMorseDatum to_datum(const FibrationSpec& s) { return EnrichedMorseDatum(s.points, s.fibers, s.transports); }

FibrationSpec spec_from_datum(std::string name, const EnrichedMorseDatum& d) {
  FibrationSpec s;
  s.name = std::move(name);
  s.points = d.points();
  s.fibers = d.fibers();
  s.transports = d.transports();
  return s;
}

std::optional<int> validity_window(const FibrationSpec& s) {
  if (!s.truncation) return std::nullopt;
  int top = 0;
  for (const auto& p : s.points) top = std::max(top, p.index);
  return *s.truncation - top;
}

namespace {

std::string pointer_escape(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

using ListedGenerators = std::map<int, std::vector<std::string>>;

class Parser {
 public:
  std::vector<SpecIssue> issues;

  void fail(std::string where, std::string what) { issues.push_back({std::move(where), std::move(what)}); }

  std::optional<int> degree_key(const std::string& key, const std::string& where) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
    if (ec != std::errc() || ptr != key.data() + key.size() || key.empty()) {
      fail(where, "degree key '" + key + "' is not an integer");
      return std::nullopt;
    }
    return value;
  }

  std::optional<long long> integer(const json& v, const std::string& where, const std::string& what) {
    if (!v.is_number_integer()) {
      fail(where, what + " must be an integer");
      return std::nullopt;
    }
    return v.get<long long>();
  }

  const json* field(const json& obj, const char* key, const std::string& where, bool required = true) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(where, std::string("missing field '") + key + "'");
      return nullptr;
    }
    return &*it;
  }

  void unknown_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
        fail(where + "/" + pointer_escape(key), "unknown field");
      }
    }
  }

  // List of [row, col] positions in a rows x cols matrix.
  std::optional<BitMatrix> matrix(const json& v, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!v.is_array()) {
      fail(where, "matrix must be a list of [row, col] positions");
      return std::nullopt;
    }
    std::vector<std::pair<std::size_t, std::size_t>> entries;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    bool ok = true;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const auto& e = v[k];
      const std::string at = where + "/" + std::to_string(k);
      if (!e.is_array() || e.size() < 2 || e.size() > 3 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        fail(at, "entry must be [row, col]");
        ok = false;
        continue;
      }
      if (e.size() == 3 && !(e[2].is_number_integer() && e[2].get<long long>() == 1)) {
        fail(at, "non-GF(2) entry " + e.dump() + ": listed positions carry coefficient 1");
        ok = false;
        continue;
      }
      const auto r = e[0].get<long long>();
      const auto c = e[1].get<long long>();
      if (r < 0 || c < 0 || static_cast<std::size_t>(r) >= rows || static_cast<std::size_t>(c) >= cols) {
        fail(at, "position " + e.dump() + " outside a " + std::to_string(rows) + "x" + std::to_string(cols) +
                     " matrix");
        ok = false;
        continue;
      }
      std::pair<std::size_t, std::size_t> pos{static_cast<std::size_t>(r), static_cast<std::size_t>(c)};
      if (!seen.insert(pos).second) {
        fail(at, "non-GF(2) entry: position " + e.dump() + " listed twice");
        ok = false;
        continue;
      }
      entries.push_back(pos);
    }
    if (!ok) return std::nullopt;
    return BitMatrix::from_entries(rows, cols, entries);
  }

  std::optional<std::vector<std::string>> string_list(const json& v, const std::string& where) {
    if (!v.is_array()) {
      fail(where, "expected a list of strings");
      return std::nullopt;
    }
    std::vector<std::string> out;
    for (const auto& s : v) {
      if (!s.is_string()) {
        fail(where, "expected a list of strings");
        return std::nullopt;
      }
      out.push_back(s.get<std::string>());
    }
    return out;
  }

  std::optional<BidegreeDims> bidegree_table(const json& v, const std::string& where) {
    if (!v.is_array()) {
      fail(where, "expected a list of [p, q, dim]");
      return std::nullopt;
    }
    BidegreeDims out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const auto& e = v[k];
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          !e[2].is_number_integer() || e[2].get<long long>() < 0) {
        fail(where + "/" + std::to_string(k), "expected [p, q, dim]");
        return std::nullopt;
      }
      const auto dim = e[2].get<std::size_t>();
      if (dim > 0) out[{e[0].get<int>(), e[1].get<int>()}] = dim;
    }
    return out;
  }
};

// Position of each listed generator inside the (sorted) complex.
std::vector<std::size_t> sorted_positions(const GradedComplex& c, const std::vector<std::string>& listed) {
  std::vector<std::size_t> out;
  for (const auto& name : listed) out.push_back(c.find(name)->index);
  return out;
}

json entries_json(const BitMatrix& m) {
  json out = json::array();
  for (auto [r, c] : m.entries()) out.push_back({r, c});
  return out;
}

json bidegree_json(const BidegreeDims& dims) {
  json out = json::array();
  for (const auto& [b, dim] : dims) {
    if (dim > 0) out.push_back({b.first, b.second, dim});
  }
  return out;
}

}  // namespace

FibrationSpec parse_spec(std::string_view text) {
  Parser ps;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::vector<SpecIssue>{{"line " + std::to_string(line_of(text, e.byte)), e.what()}});
  }
  if (!root.is_object()) throw SpecError(std::vector<SpecIssue>{{"/", "document must be a JSON object"}});
  ps.unknown_keys(root, {"name", "points", "fibers", "transports", "truncation", "monodromy", "reference"}, "");

  FibrationSpec spec;
  if (const auto* name = ps.field(root, "name", "/")) {
    if (name->is_string()) {
      spec.name = name->get<std::string>();
    } else {
      ps.fail("/name", "must be a string");
    }
  }

  std::map<std::string, int> index;
  if (const auto* points = ps.field(root, "points", "/")) {
    if (!points->is_array()) {
      ps.fail("/points", "must be a list");
    } else {
      for (std::size_t k = 0; k < points->size(); ++k) {
        const auto& p = (*points)[k];
        const std::string at = "/points/" + std::to_string(k);
        if (!p.is_object()) {
          ps.fail(at, "point must be an object");
          continue;
        }
        ps.unknown_keys(p, {"id", "index"}, at);
        const auto* id = ps.field(p, "id", at);
        const auto* idx = ps.field(p, "index", at);
        if (!id || !idx) continue;
        if (!id->is_string()) {
          ps.fail(at + "/id", "must be a string");
          continue;
        }
        auto value = ps.integer(*idx, at + "/index", "Morse index");
        if (!value) continue;
        if (*value < 0) {
          ps.fail(at + "/index", "Morse index must be nonnegative");
          continue;
        }
        const auto pid = id->get<std::string>();
        if (!index.emplace(pid, static_cast<int>(*value)).second) {
          ps.fail(at + "/id", "duplicate critical point '" + pid + "'");
          continue;
        }
        spec.points.push_back({pid, static_cast<int>(*value)});
      }
    }
  }
  std::sort(spec.points.begin(), spec.points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return std::tie(a.index, a.id) < std::tie(b.index, b.id);
  });

  std::map<std::string, ListedGenerators> listed;
  if (const auto* fibers = ps.field(root, "fibers", "/")) {
    if (!fibers->is_object()) {
      ps.fail("/fibers", "must be an object keyed by critical point id");
    } else {
      for (const auto& pt : spec.points) {
        if (!fibers->contains(pt.id)) ps.fail("/fibers", "missing fiber for critical point '" + pt.id + "'");
      }
      for (const auto& [id, fib] : fibers->items()) {
        const std::string at = "/fibers/" + pointer_escape(id);
        if (!index.contains(id)) {
          ps.fail(at, "fiber for unknown critical point '" + id + "'");
          continue;
        }
        if (!fib.is_object()) {
          ps.fail(at, "fiber must be an object");
          continue;
        }
        ps.unknown_keys(fib, {"generators", "differential"}, at);
        const auto* gens = ps.field(fib, "generators", at);
        if (!gens) continue;
        if (!gens->is_object()) {
          ps.fail(at + "/generators", "must be an object keyed by degree");
          continue;
        }
        ListedGenerators names;
        bool ok = true;
        for (const auto& [key, list] : gens->items()) {
          const auto deg = ps.degree_key(key, at + "/generators");
          auto strings = ps.string_list(list, at + "/generators/" + key);
          if (!deg || !strings) {
            ok = false;
            continue;
          }
          if (!strings->empty()) names[*deg] = std::move(*strings);
        }
        std::map<int, BitMatrix> differential;
        if (const auto* diff = ps.field(fib, "differential", at, false)) {
          if (!diff->is_object()) {
            ps.fail(at + "/differential", "must be an object keyed by degree");
            ok = false;
          } else {
            for (const auto& [key, m] : diff->items()) {
              const auto deg = ps.degree_key(key, at + "/differential");
              if (!deg) {
                ok = false;
                continue;
              }
              auto count = [&](int d) { return names.contains(d) ? names.at(d).size() : std::size_t{0}; };
              auto mat = ps.matrix(m, count(*deg - 1), count(*deg), at + "/differential/" + key);
              if (!mat) {
                ok = false;
                continue;
              }
              differential.emplace(*deg, std::move(*mat));
            }
          }
        }
        if (!ok) continue;
        try {
          GradedComplex c(names, std::move(differential));
          if (auto w = validate_complex(c)) {
            ps.fail(at + "/differential", "boundary squares to nonzero on generator '" + w->generator + "' in degree " +
                                              std::to_string(w->degree));
            continue;
          }
          spec.fibers.emplace(id, std::move(c));
          listed.emplace(id, std::move(names));
        } catch (const std::invalid_argument& e) {
          ps.fail(at, e.what());
        }
      }
    }
  }

  if (const auto* transports = ps.field(root, "transports", "/", false)) {
    if (!transports->is_array()) {
      ps.fail("/transports", "must be a list");
    } else {
      for (std::size_t k = 0; k < transports->size(); ++k) {
        const auto& t = (*transports)[k];
        const std::string at = "/transports/" + std::to_string(k);
        if (!t.is_object()) {
          ps.fail(at, "transport must be an object");
          continue;
        }
        ps.unknown_keys(t, {"from", "to", "shift", "components"}, at);
        const auto* from = ps.field(t, "from", at);
        const auto* to = ps.field(t, "to", at);
        const auto* shift_v = ps.field(t, "shift", at);
        if (!from || !to || !shift_v) continue;
        if (!from->is_string() || !to->is_string()) {
          ps.fail(at, "'from' and 'to' must be critical point ids");
          continue;
        }
        const auto x = from->get<std::string>();
        const auto y = to->get<std::string>();
        const std::string label = "transport " + x + " -> " + y;
        if (!index.contains(x) || !index.contains(y)) {
          ps.fail(at, label + ": unknown critical point '" + (index.contains(x) ? y : x) + "'");
          continue;
        }
        auto shift = ps.integer(*shift_v, at + "/shift", "shift");
        if (!shift) continue;
        const int drop = index.at(x) - index.at(y);
        if (drop <= 0) {
          ps.fail(at, label + ": index must strictly decrease along a transport");
          continue;
        }
        if (*shift != drop - 1) {
          ps.fail(at + "/shift", label + ": shift " + std::to_string(*shift) + " but |" + x + "| - |" + y +
                                     "| - 1 = " + std::to_string(drop - 1));
          continue;
        }
        if (spec.transports.contains({x, y})) {
          ps.fail(at, label + ": listed twice");
          continue;
        }
        if (!listed.contains(x) || !listed.contains(y)) continue;  // fiber already reported
        const auto& src = listed.at(x);
        const auto& tgt = listed.at(y);
        std::map<int, BitMatrix> comps;
        bool ok = true;
        if (const auto* c = ps.field(t, "components", at, false)) {
          if (!c->is_object()) {
            ps.fail(at + "/components", "must be an object keyed by source degree");
            continue;
          }
          for (const auto& [key, m] : c->items()) {
            const auto deg = ps.degree_key(key, at + "/components");
            if (!deg) {
              ok = false;
              continue;
            }
            const int out_deg = *deg + static_cast<int>(*shift);
            const std::vector<std::string> none;
            const auto& cols = src.contains(*deg) ? src.at(*deg) : none;
            const auto& rows = tgt.contains(out_deg) ? tgt.at(out_deg) : none;
            auto mat = ps.matrix(m, rows.size(), cols.size(), at + "/components/" + key);
            if (!mat) {
              ok = false;
              continue;
            }
            if (mat->is_zero()) continue;
            comps.emplace(*deg, mat->permuted(sorted_positions(spec.fibers.at(y), rows),
                                              sorted_positions(spec.fibers.at(x), cols)));
          }
        }
        if (ok) spec.transports.emplace(PointPair{x, y}, DegreeMap(static_cast<int>(*shift), std::move(comps)));
      }
    }
  }

  if (const auto* trunc = ps.field(root, "truncation", "/", false)) {
    if (auto n = ps.integer(*trunc, "/truncation", "truncation degree")) {
      if (*n < 0) {
        ps.fail("/truncation", "must be nonnegative");
      } else {
        spec.truncation = static_cast<int>(*n);
      }
    }
  }

  if (const auto* mono = ps.field(root, "monodromy", "/", false)) {
    const std::string at = "/monodromy";
    if (!mono->is_object()) {
      ps.fail(at, "must be an object");
    } else {
      ps.unknown_keys(*mono, {"group", "system", "transports"}, at);
      const auto* group = ps.field(*mono, "group", at);
      const auto* system = ps.field(*mono, "system", at);
      std::optional<MonodromyBlock> block;
      if (group && system) {
        try {
          const auto* elements = ps.field(*group, "elements", at + "/group");
          const auto* table = ps.field(*group, "table", at + "/group");
          if (elements && table && system->is_string()) {
            auto names = ps.string_list(*elements, at + "/group/elements");
            std::vector<std::vector<std::string>> rows;
            bool ok = names.has_value() && table->is_array();
            if (ok) {
              for (const auto& row : *table) {
                auto r = ps.string_list(row, at + "/group/table");
                if (!r) {
                  ok = false;
                  break;
                }
                rows.push_back(std::move(*r));
              }
            } else if (names) {
              ps.fail(at + "/group/table", "must be a list of rows");
            }
            if (ok) {
              block = MonodromyBlock{FiniteGroup(*names, rows), system->get<std::string>(), {}};
              make_system(block->group, block->system);
            }
          } else if (!system->is_string()) {
            ps.fail(at + "/system", "must be a string");
          }
        } catch (const std::invalid_argument& e) {
          ps.fail(at, e.what());
          block.reset();
        }
      }
      if (block) {
        if (const auto* ts = ps.field(*mono, "transports", at, false)) {
          for (std::size_t k = 0; ts->is_array() && k < ts->size(); ++k) {
            const auto& t = (*ts)[k];
            const std::string tat = at + "/transports/" + std::to_string(k);
            const auto* from = t.is_object() ? ps.field(t, "from", tat) : nullptr;
            const auto* to = t.is_object() ? ps.field(t, "to", tat) : nullptr;
            const auto* el = t.is_object() ? ps.field(t, "element", tat) : nullptr;
            if (!from || !to || !el || !from->is_string() || !to->is_string()) {
              ps.fail(tat, "expected {from, to, element}");
              continue;
            }
            auto names = ps.string_list(*el, tat + "/element");
            if (!names) continue;
            try {
              block->transports[{from->get<std::string>(), to->get<std::string>()}] =
                  algebra_element(block->group, *names);
            } catch (const std::invalid_argument& e) {
              ps.fail(tat + "/element", e.what());
            }
          }
          if (!ts->is_array()) ps.fail(at + "/transports", "must be a list");
        }
        spec.monodromy = std::move(block);
      }
    }
  }

  if (const auto* ref = ps.field(root, "reference", "/", false)) {
    const std::string at = "/reference";
    if (!ref->is_object()) {
      ps.fail(at, "must be an object");
    } else {
      ps.unknown_keys(*ref, {"homology", "pages", "infinity"}, at);
      ReferenceBlock block;
      if (const auto* h = ps.field(*ref, "homology", at, false)) {
        for (const auto& [key, v] : h->items()) {
          auto deg = ps.degree_key(key, at + "/homology");
          auto dim = ps.integer(v, at + "/homology/" + key, "dimension");
          if (deg && dim && *dim > 0) block.homology[*deg] = static_cast<std::size_t>(*dim);
        }
      }
      if (const auto* pages = ps.field(*ref, "pages", at, false)) {
        for (const auto& [key, v] : pages->items()) {
          auto r = ps.degree_key(key, at + "/pages");
          auto dims = ps.bidegree_table(v, at + "/pages/" + key);
          if (r && dims) block.pages[*r] = std::move(*dims);
        }
      }
      if (const auto* inf = ps.field(*ref, "infinity", at, false)) {
        block.infinity = ps.bidegree_table(*inf, at + "/infinity");
      }
      spec.reference = std::move(block);
    }
  }

  if (ps.issues.empty() && spec.monodromy) {
    try {
      const auto& m = *spec.monodromy;
      const auto expected = datum_from_monodromy(spec.points, m.transports, make_system(m.group, m.system));
      if (!(expected == to_datum(spec))) {
        ps.fail("/monodromy", "fibers and transports do not match the ones induced by the monodromy block");
      }
    } catch (const MonodromyDatumError& e) {
      ps.fail("/monodromy/transports", "pair " + e.from() + " -> " + e.to() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      ps.fail("/monodromy", e.what());
    }
  }

  if (!ps.issues.empty()) throw SpecError(std::move(ps.issues));
  return spec;
}

std::string emit_spec(const FibrationSpec& s) {
  json root;
  root["name"] = s.name;

  auto points = s.points;
  std::sort(points.begin(), points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return std::tie(a.index, a.id) < std::tie(b.index, b.id);
  });
  root["points"] = json::array();
  for (const auto& p : points) root["points"].push_back({{"id", p.id}, {"index", p.index}});

  root["fibers"] = json::object();
  for (const auto& [id, c] : s.fibers) {
    json gens = json::object();
    for (const auto& [d, names] : c.generators()) gens[std::to_string(d)] = names;
    json diff = json::object();
    for (const auto& [d, m] : c.nonzero_boundaries()) diff[std::to_string(d)] = entries_json(m);
    root["fibers"][id] = {{"generators", gens}, {"differential", diff}};
  }

  root["transports"] = json::array();
  for (const auto& [pair, map] : s.transports) {
    json comps = json::object();
    for (const auto& [d, m] : map.components()) comps[std::to_string(d)] = entries_json(m);
    root["transports"].push_back({{"from", pair.first}, {"to", pair.second}, {"shift", map.shift()}, {"components", comps}});
  }

  if (s.truncation) root["truncation"] = *s.truncation;

  if (s.monodromy) {
    const auto& m = *s.monodromy;
    json ts = json::array();
    for (const auto& [pair, value] : m.transports) {
      json names = json::array();
      for (auto g : value.support()) names.push_back(m.group.name(g));
      ts.push_back({{"from", pair.first}, {"to", pair.second}, {"element", names}});
    }
    root["monodromy"] = {{"group", {{"elements", m.group.elements()}, {"table", m.group.table()}}},
                         {"system", m.system},
                         {"transports", ts}};
  }

  if (s.reference) {
    const auto& r = *s.reference;
    json ref = json::object();
    json h = json::object();
    for (const auto& [d, dim] : r.homology) {
      if (dim > 0) h[std::to_string(d)] = dim;
    }
    ref["homology"] = h;
    json pages = json::object();
    for (const auto& [k, dims] : r.pages) pages[std::to_string(k)] = bidegree_json(dims);
    ref["pages"] = pages;
    if (r.infinity) ref["infinity"] = bidegree_json(*r.infinity);
    root["reference"] = ref;
  }
  return root.dump(2) + "\n";
}

}  // namespace emorse
