#include "commands.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "orb/chern.hpp"
#include "orb/equivalence.hpp"
#include "orb/errors.hpp"
#include "orb/inertia.hpp"
#include "orb/json_io.hpp"
#include "orb/models.hpp"
#include "orb/tolerances.hpp"

namespace orb::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Settings {
  double tol_structural = kStructuralTol;
  double tol_rank = kRankTol;
  int search_bound = 8;
};

// Numbers are rounded to 12 significant digits before serialization so that
// identical inputs produce byte-identical reports.
double rounded(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

ordered_json complex_value(std::complex<double> v) {
  return ordered_json::array({rounded(v.real()), rounded(v.imag())});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json signature_json(const MoritaSignature& sig) {
  ordered_json classes = ordered_json::array();
  for (const auto& cls : sig.classes) {
    ordered_json c;
    c["order"] = cls.representative.order();
    c["abelian"] = cls.representative.is_abelian();
    c["element_orders"] = cls.representative.order_profile();
    c["count"] = cls.count;
    classes.push_back(std::move(c));
  }
  return classes;
}

int cmd_analyze(const std::string& path, const Settings&, std::ostream& out, std::ostream& err) {
  auto doc = load_groupoid_document(read_file(path));
  const Groupoid& g = *doc.groupoid;
  err << "loaded groupoid (" << doc.kind << "): " << g.objects() << " objects, " << g.arrows()
      << " arrows\n";
  auto orbits = orbits_and_isotropy(g);

  ordered_json report;
  report["objects"] = g.objects();
  report["arrows"] = g.arrows();
  report["orbits"] = orbits.count();
  ordered_json orders = ordered_json::array();
  for (const auto& iso : orbits.isotropy) orders.push_back(iso.group.order());
  report["isotropy"] = std::move(orders);
  report["morita_signature"] = signature_json(morita_signature(g));
  report["k_rank"] = k_rank(g);
  out << report.dump() << "\n";
  return kExitOk;
}

int cmd_inertia(const std::string& path, const Settings&, std::ostream& out, std::ostream& err) {
  auto doc = load_groupoid_document(read_file(path));
  const Groupoid& g = *doc.groupoid;
  auto orbits = inertia_orbits(g);

  ordered_json report;
  report["loops"] = orbits.loops.count();
  report["inertia_orbits"] = orbits.count();
  ordered_json orders = ordered_json::array();
  for (int rep : orbits.representatives) {
    const int loop = orbits.loops.loops[rep];
    int stabilizer = 0;
    for (int d : g.arrows_from(orbits.loops.base[rep]))
      if (g.conjugate(d, loop) == loop) ++stabilizer;
    orders.push_back(stabilizer);
  }
  report["orbit_isotropy_orders"] = std::move(orders);

  if (doc.action) {
    auto dec = inertia_decomposition(*doc.action);
    ordered_json components = ordered_json::array();
    for (size_t c = 0; c < dec.components.size(); ++c) {
      ordered_json comp;
      comp["representative"] = dec.class_representatives[c];
      comp["centralizer_order"] = dec.centralizers[c].group.order();
      comp["fixed_points"] = static_cast<int>(dec.fixed_points[c].size());
      comp["orbits"] = orbits_and_isotropy(*action_groupoid(dec.components[c])).count();
      components.push_back(std::move(comp));
    }
    report["components"] = std::move(components);
    report["certificate"] = dec.certificate.weak ? "verified" : "failed";
    err << "decomposition: " << dec.components.size() << " components, comparison "
        << (dec.certificate.weak ? "verified" : "FAILED") << "\n";
  }
  out << report.dump() << "\n";
  return kExitOk;
}

int cmd_weq(const std::string& path, const Settings& settings, std::ostream& out, std::ostream&) {
  auto doc = load_hom_document(read_file(path));
  if (auto v = hom_validate(doc.hom))
    throw ValidationError("hom invalid (" + v->rule + "): " + v->detail);

  ordered_json report;
  auto weak = is_weak_equivalence(doc.hom);
  report["weak"] = weak.weak;
  if (!weak.weak) {
    report["condition"] = weak.failure->condition;
    if (weak.failure->x >= 0 || weak.failure->y >= 0)
      report["failing_pair"] = ordered_json::array({weak.failure->x, weak.failure->y});
    report["detail"] = weak.failure->detail;
  }
  if (doc.cod->objects() > settings.search_bound) {
    report["strong"] = "bound_exceeded";
  } else {
    try {
      auto strong = is_strong_equivalence(doc.hom);
      report["strong"] = strong.strong;
    } catch (const CapabilityError&) {
      report["strong"] = "bound_exceeded";
    }
  }
  if (weak.weak) {
    ordered_json cert;
    cert["surjectivity_witness"] = weak.surjectivity_witness;
    report["certificate"] = std::move(cert);
  }
  out << report.dump() << "\n";
  return kExitOk;
}

int cmd_morita(const std::string& path, const Settings&, std::ostream& out, std::ostream& err) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
  if (!j.contains("g") || !j.contains("h"))
    throw InputError("morita document needs groupoids \"g\" and \"h\"");
  auto g = load_groupoid_document(j["g"].dump()).groupoid;
  auto h = load_groupoid_document(j["h"].dump()).groupoid;

  ordered_json report;
  report["signature_g"] = signature_json(morita_signature(*g));
  report["signature_h"] = signature_json(morita_signature(*h));
  auto result = are_morita_equivalent(g, h);
  report["equivalent"] = result.equivalent;
  if (result.equivalent) {
    ordered_json cert;
    cert["span_objects"] = result.certificate->left.dom->objects();
    cert["left_weak"] = true;
    cert["right_weak"] = true;
    report["certificate"] = std::move(cert);
    err << "constructed Morita span through the common skeleton\n";
  }
  out << report.dump() << "\n";
  return kExitOk;
}

int cmd_chdeloc(const std::string& gpath, const std::string& bpath, const Settings& settings,
                std::ostream& out, std::ostream& err) {
  auto doc = load_groupoid_document(read_file(gpath));
  auto bundle = load_bundle(read_file(bpath), doc.groupoid);
  if (auto v = bundle_validate(bundle, settings.tol_structural))
    throw ValidationError("bundle laws violated (" + v->rule + "): " + v->detail);

  auto value = ch_deloc(bundle, settings.tol_structural);
  ordered_json report;
  ordered_json values;
  for (size_t o = 0; o < value.values.size(); ++o)
    values[std::to_string(o)] = complex_value(value.values[o]);
  report["values"] = std::move(values);
  report["good"] = is_good(bundle, settings.tol_structural).good;
  report["invariant_section_dim"] = invariant_sections(bundle, settings.tol_structural).dimension;
  auto rank = ch_deloc_rank_check(doc.groupoid, settings.tol_rank);
  ordered_json rank_report;
  rank_report["rank"] = rank.numerical_rank;
  rank_report["expected"] = rank.expected;
  rank_report["pass"] = rank.pass;
  report["rank_check"] = std::move(rank_report);
  out << report.dump() << "\n";
  if (!rank.pass) {
    err << "rank check failed: rank " << rank.numerical_rank << ", expected " << rank.expected
        << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_sections(const std::string& gpath, const std::string& bpath, const Settings& settings,
                 std::ostream& out, std::ostream&) {
  auto doc = load_groupoid_document(read_file(gpath));
  auto bundle = load_bundle(read_file(bpath), doc.groupoid);
  auto sections = invariant_sections(bundle, settings.tol_structural);
  ordered_json report;
  report["dimension"] = sections.dimension;
  report["per_orbit"] = sections.per_orbit_dimension;
  out << report.dump() << "\n";
  return kExitOk;
}

int cmd_wps(const std::string& weights_csv, const Settings&, std::ostream& out, std::ostream&) {
  WeightVector w;
  std::stringstream ss(weights_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      w.weights.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw InputError("weights must be a comma-separated list of integers");
    }
  }
  w.validate();
  ordered_json report;
  report["effective"] = wps_effective(w);
  ordered_json strata = ordered_json::array();
  for (const auto& s : wps_strata(w)) {
    ordered_json entry;
    entry["support"] = s.support;
    entry["order"] = s.order;
    strata.push_back(std::move(entry));
  }
  report["strata"] = std::move(strata);
  out << report.dump() << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite groupoid and orbifold invariant calculator"};
  app.require_subcommand(1);

  Settings settings;
  app.add_option("--tol-structural", settings.tol_structural, "structural identity tolerance");
  app.add_option("--tol-rank", settings.tol_rank, "rank cutoff for singular values");
  app.add_option("--search-bound", settings.search_bound, "object bound for equivalence searches");

  std::string input, second, weights;

  auto* analyze = app.add_subcommand("analyze", "orbit, isotropy and K-rank report");
  analyze->add_option("input", input, "groupoid document")->required();

  auto* inertia = app.add_subcommand("inertia", "loop space, twisted sectors, decomposition");
  inertia->add_option("input", input, "groupoid or action document")->required();

  auto* weq = app.add_subcommand("weq", "weak/strong equivalence check of a homomorphism");
  weq->add_option("input", input, "hom document (dom, cod, hom)")->required();

  auto* morita = app.add_subcommand("morita", "Morita equivalence of two groupoids");
  morita->add_option("input", input, "document with groupoids g and h")->required();

  auto* chdeloc = app.add_subcommand("chdeloc", "delocalised Chern character of a bundle");
  chdeloc->add_option("groupoid", input, "groupoid document")->required();
  chdeloc->add_option("bundle", second, "bundle document")->required();

  auto* sections = app.add_subcommand("sections", "invariant section dimension of a bundle");
  sections->add_option("groupoid", input, "groupoid document")->required();
  sections->add_option("bundle", second, "bundle document")->required();

  auto* wps = app.add_subcommand("wps", "weighted projective space singular strata");
  wps->add_option("--weights", weights, "comma-separated positive integers")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kExitOk;
    }
    err << "argument error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(input, settings, out, err);
    if (inertia->parsed()) return cmd_inertia(input, settings, out, err);
    if (weq->parsed()) return cmd_weq(input, settings, out, err);
    if (morita->parsed()) return cmd_morita(input, settings, out, err);
    if (chdeloc->parsed()) return cmd_chdeloc(input, second, settings, out, err);
    if (sections->parsed()) return cmd_sections(input, second, settings, out, err);
    if (wps->parsed()) return cmd_wps(weights, settings, out, err);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const CapabilityError& e) {
    err << "capability error: " << e.what() << "\n";
    return kExitCapability;
  }
  err << "no subcommand selected\n";
  return kExitInput;
}

}  // namespace orb::cli
