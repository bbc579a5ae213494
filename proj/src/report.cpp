#include "emorse/report.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

namespace emorse {

using nlohmann::json;

bool Report::checks_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

bool Report::compare_ok() const { return checks_ok() && computed && mismatches.empty(); }

namespace {

bool in_window(const std::optional<int>& window, int degree) { return !window || degree <= *window; }

PageTable tabulate(const SpectralPage& p) {
  PageTable t{p.r, p.dims, {}};
  for (const auto& [b, m] : p.differentials) {
    if (auto k = gf2::rank(m); k > 0) t.differential_ranks[b] = k;
  }
  return t;
}

std::string show(Bidegree b) { return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")"; }

std::size_t lookup(const BidegreeDims& d, Bidegree b) {
  auto it = d.find(b);
  return it == d.end() ? 0 : it->second;
}

std::size_t lookup(const std::map<int, std::size_t>& d, int k) {
  auto it = d.find(k);
  return it == d.end() ? 0 : it->second;
}

// Differences between two dimension tables, restricted to the window.
void diff_bidegrees(const std::string& what, const BidegreeDims& expected, const BidegreeDims& actual,
                    const std::optional<int>& window, std::vector<std::string>& out) {
  std::set<Bidegree> keys;
  for (const auto& [b, d] : expected) keys.insert(b);
  for (const auto& [b, d] : actual) keys.insert(b);
  for (auto b : keys) {
    if (!in_window(window, b.first + b.second)) continue;
    const auto e = lookup(expected, b);
    const auto a = lookup(actual, b);
    if (e != a) {
      out.push_back(what + " " + show(b) + ": expected " + std::to_string(e) + ", got " + std::to_string(a));
    }
  }
}

void diff_degrees(const std::string& what, const std::map<int, std::size_t>& expected,
                  const std::map<int, std::size_t>& actual, const std::optional<int>& window,
                  std::vector<std::string>& out) {
  std::set<int> keys;
  for (const auto& [k, d] : expected) keys.insert(k);
  for (const auto& [k, d] : actual) keys.insert(k);
  for (int k : keys) {
    if (!in_window(window, k)) continue;
    const auto e = lookup(expected, k);
    const auto a = lookup(actual, k);
    if (e != a) {
      out.push_back(what + " degree " + std::to_string(k) + ": expected " + std::to_string(e) + ", got " +
                    std::to_string(a));
    }
  }
}

std::map<int, std::size_t> nonzero(const std::map<int, std::size_t>& m) {
  std::map<int, std::size_t> out;
  for (const auto& [k, v] : m) {
    if (v > 0) out[k] = v;
  }
  return out;
}

}  // namespace

Report run_report(const FibrationSpec& spec, const ReportOptions& options) {
  Report rep;
  rep.name = spec.name;
  rep.window = validity_window(spec);

  EnrichedMorseDatum datum;
  try {
    datum = to_datum(spec);
  } catch (const std::invalid_argument& e) {
    rep.checks.push_back({"datum", false, {e.what()}});
    return rep;
  }

  CheckResult structure{"structure equation", true, {}};
  for (const auto& w : check_structure_equation(datum)) {
    structure.ok = false;
    structure.details.push_back("T^" + w.from + "_" + w.to + " fails on '" + w.generator + "' (fiber degree " +
                                std::to_string(w.degree) + ")");
  }
  rep.checks.push_back(structure);
  if (!structure.ok) return rep;

  FilteredComplex fc;
  CheckResult square{"d^2 = 0", true, {}};
  CheckResult filtration{"filtration", true, {}};
  try {
    fc = build_total_complex(datum);
  } catch (const std::logic_error& e) {
    square.ok = false;
    square.details.push_back(e.what());
  }
  if (square.ok) {
    if (auto w = validate_complex(fc.complex())) {
      square.ok = false;
      square.details.push_back("d^2 nonzero on '" + w->generator + "' in degree " + std::to_string(w->degree));
    }
    if (auto w = validate_filtration(fc)) {
      filtration.ok = false;
      filtration.details.push_back("d('" + w->generator + "') reaches '" + w->target + "' at a higher level");
    }
  }
  rep.checks.push_back(square);
  rep.checks.push_back(filtration);
  if (!square.ok || !filtration.ok) return rep;

  rep.computed = true;
  const auto& total = fc.complex();
  const auto h = homology(total).dims;
  if (auto lo = total.min_degree()) {
    for (int n = *lo; n <= *total.max_degree(); ++n) rep.homology[n] = lookup(h, n);
  }

  const auto inf = infinity_page(fc);
  rep.stabilization = inf.stabilization;
  rep.infinity = inf.page.dims;
  rep.graded = associated_graded_of_homology(fc);

  const int last = std::max(1, options.max_page.value_or(std::max(rep.stabilization, 2)));
  std::map<int, SpectralPage> computed;
  auto get_page = [&](int r) -> const SpectralPage& {
    auto it = computed.find(r);
    if (it == computed.end()) it = computed.emplace(r, page(fc, r)).first;
    return it->second;
  };
  for (int r = 1; r <= last; ++r) rep.pages.push_back(tabulate(get_page(r)));

  const auto e1 = e1_complex(datum);
  rep.e1_enriched = e1.dims;
  rep.e2_enriched = e2_dims(e1);
  diff_bidegrees("E1", get_page(1).dims, rep.e1_enriched, std::nullopt, rep.cross_check_failures);
  diff_bidegrees("E2", get_page(2).dims, rep.e2_enriched, std::nullopt, rep.cross_check_failures);
  for (const auto& [b, dim] : e1.dims) {
    if (e1.d1_rank(b.first, b.second) != get_page(1).differential_rank(b.first, b.second)) {
      rep.cross_check_failures.push_back("d1 rank at " + show(b) + ": enriched " +
                                         std::to_string(e1.d1_rank(b.first, b.second)) + ", engine " +
                                         std::to_string(get_page(1).differential_rank(b.first, b.second)));
    }
  }

  if (spec.monodromy) {
    const auto& m = *spec.monodromy;
    CheckResult local{"local-system oracle", true, {}};
    try {
      rep.local_homology = cellular_local_homology(lifted_group_complex(spec.points, m.transports, m.group),
                                                   make_system(m.group, m.system));
      diff_degrees("homology", nonzero(*rep.local_homology), h, rep.window, local.details);
      local.ok = local.details.empty();
    } catch (const std::invalid_argument& e) {
      local.ok = false;
      local.details.push_back(e.what());
    }
    rep.checks.push_back(local);
  }

  if (!spec.reference) {
    rep.mismatches.push_back("spec has no reference block");
  } else {
    const auto& ref = *spec.reference;
    diff_degrees("homology", ref.homology, h, rep.window, rep.mismatches);
    for (const auto& [r, dims] : ref.pages) {
      if (r < 1) {
        rep.mismatches.push_back("reference page " + std::to_string(r) + " does not exist");
        continue;
      }
      diff_bidegrees("E" + std::to_string(r), dims, get_page(r).dims, rep.window, rep.mismatches);
    }
    if (ref.infinity) diff_bidegrees("E^inf", *ref.infinity, rep.infinity, rep.window, rep.mismatches);
  }
  return rep;
}

namespace {

json bidegree_json(const BidegreeDims& dims) {
  json out = json::array();
  for (const auto& [b, d] : dims) out.push_back({b.first, b.second, d});
  return out;
}

json checks_json(const Report& r) {
  json out = json::array();
  for (const auto& c : r.checks) out.push_back({{"name", c.name}, {"ok", c.ok}, {"details", c.details}});
  return out;
}

json homology_json(const Report& r) {
  json out = json::array();
  for (const auto& [n, d] : r.homology) out.push_back({{"degree", n}, {"dim", d}, {"trusted", in_window(r.window, n)}});
  return out;
}

std::string window_note(const Report& r) {
  if (!r.window) return "";
  return "validity window: total degree <= " + std::to_string(*r.window) +
         " (truncated fibers; higher degrees may carry artifacts)\n";
}

std::string status(bool ok) { return ok ? "ok" : "FAILED"; }

// Grid with p across and q down (highest q first).
std::string grid(const BidegreeDims& dims, const BidegreeDims& ranks) {
  if (dims.empty()) return "  (zero)\n";
  int pmin = dims.begin()->first.first, pmax = pmin, qmin = dims.begin()->first.second, qmax = qmin;
  for (const auto& [b, d] : dims) {
    pmin = std::min(pmin, b.first);
    pmax = std::max(pmax, b.first);
    qmin = std::min(qmin, b.second);
    qmax = std::max(qmax, b.second);
  }
  constexpr int w = 7;
  std::ostringstream os;
  os << "  " << std::setw(4) << "q\\p";
  for (int p = pmin; p <= pmax; ++p) os << std::setw(w) << p;
  os << "\n";
  for (int q = qmax; q >= qmin; --q) {
    os << "  " << std::setw(4) << q;
    for (int p = pmin; p <= pmax; ++p) {
      std::string cell = ".";
      if (auto d = lookup(dims, {p, q})) {
        cell = std::to_string(d);
        if (auto k = lookup(ranks, {p, q})) cell += "/" + std::to_string(k);
      }
      os << std::setw(w) << cell;
    }
    os << "\n";
  }
  return os.str();
}

std::string checks_text(const Report& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    os << "  " << std::left << std::setw(22) << c.name << std::right << status(c.ok) << "\n";
    for (const auto& d : c.details) os << "      " << d << "\n";
  }
  return os.str();
}

}  // namespace

std::string render_text(const Report& r, Section section) {
  std::ostringstream os;
  os << "spec " << r.name << "\n" << window_note(r);
  if (section == Section::check || !r.computed) {
    os << checks_text(r);
    if (section == Section::check || !r.checks_ok()) return os.str();
  }
  switch (section) {
    case Section::check:
      break;
    case Section::homology:
      os << "total homology\n  degree  dim\n";
      for (const auto& [n, d] : r.homology) {
        os << "  " << std::setw(6) << n << std::setw(5) << d << (in_window(r.window, n) ? "" : "  truncation artifact")
           << "\n";
      }
      break;
    case Section::pages:
      for (const auto& p : r.pages) {
        os << "E" << p.r << "  (dim, or dim/rank of d" << p.r << " leaving the entry)\n"
           << grid(p.dims, p.differential_ranks);
      }
      os << "stabilization: r = " << r.stabilization << "\n";
      os << "E^inf\n" << grid(r.infinity, {});
      if (r.infinity_ok()) {
        os << "E^inf vs associated graded of homology: match\n";
      } else {
        os << "E^inf vs associated graded of homology: MISMATCH\n";
        std::vector<std::string> lines;
        diff_bidegrees("graded", r.graded, r.infinity, std::nullopt, lines);
        for (const auto& l : lines) os << "  " << l << "\n";
      }
      break;
    case Section::e2:
      os << "E2 via fiber homology and d1\n" << grid(r.e2_enriched, {});
      if (r.e2_ok()) {
        os << "cross-check against the page engine (E1, d1, E2): ok\n";
      } else {
        os << "cross-check against the page engine: FAILED\n";
        for (const auto& l : r.cross_check_failures) os << "  " << l << "\n";
      }
      break;
    case Section::compare:
      os << checks_text(r);
      if (r.compare_ok()) {
        os << "reference: match\n";
      } else {
        os << "reference: MISMATCH\n";
        for (const auto& l : r.mismatches) os << "  " << l << "\n";
      }
      break;
  }
  return os.str();
}

std::string render_json(const Report& r, Section section) {
  json out;
  out["name"] = r.name;
  out["window"] = r.window ? json(*r.window) : json(nullptr);
  out["checks"] = checks_json(r);
  out["computed"] = r.computed;
  switch (section) {
    case Section::check:
      out["ok"] = r.checks_ok();
      break;
    case Section::homology:
      out["homology"] = homology_json(r);
      out["ok"] = r.computed;
      break;
    case Section::pages: {
      json pages = json::array();
      for (const auto& p : r.pages) {
        pages.push_back({{"r", p.r}, {"dims", bidegree_json(p.dims)}, {"d_ranks", bidegree_json(p.differential_ranks)}});
      }
      out["pages"] = pages;
      out["stabilization"] = r.stabilization;
      out["infinity"] = bidegree_json(r.infinity);
      out["associated_graded"] = bidegree_json(r.graded);
      out["ok"] = r.infinity_ok();
      break;
    }
    case Section::e2:
      out["e1"] = bidegree_json(r.e1_enriched);
      out["e2"] = bidegree_json(r.e2_enriched);
      out["discrepancies"] = r.cross_check_failures;
      out["ok"] = r.e2_ok();
      break;
    case Section::compare:
      out["mismatches"] = r.mismatches;
      out["ok"] = r.compare_ok();
      break;
  }
  if (r.local_homology) {
    json lh = json::object();
    for (const auto& [k, v] : *r.local_homology) lh[std::to_string(k)] = v;
    out["local_system_homology"] = lh;
  }
  return out.dump(2) + "\n";
}

}  // namespace emorse
