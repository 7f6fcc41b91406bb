#include "orb/json_io.hpp"

#include <json.hpp>

#include "orb/errors.hpp"
#include "orb/models.hpp"

namespace orb {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
}

int require_int(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw InputError(std::string("missing or non-integer field \"") + field + "\"");
  return j[field].get<int>();
}

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<int> r;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InputError(std::string(what) + " must contain integers");
    r.push_back(v.get<int>());
  }
  return r;
}

FiniteGroup group_from_json(const json& j) {
  if (j.contains("cyclic")) return FiniteGroup::cyclic(j["cyclic"].get<int>());
  if (j.contains("symmetric")) return FiniteGroup::symmetric(j["symmetric"].get<int>());
  if (j.contains("degree")) {
    int degree = require_int(j, "degree");
    std::vector<std::vector<int>> gens;
    if (j.contains("generators"))
      for (const auto& p : j["generators"]) gens.push_back(int_list(p, "generator"));
    return FiniteGroup::from_permutations(degree, gens);
  }
  if (j.contains("mul")) {
    std::vector<std::vector<int>> table;
    for (const auto& row : j["mul"]) table.push_back(int_list(row, "mul row"));
    int order = j.contains("order") ? require_int(j, "order") : static_cast<int>(table.size());
    if (order != static_cast<int>(table.size()))
      throw InputError("declared order disagrees with the mul table size");
    std::vector<std::string> names;
    if (j.contains("names"))
      for (const auto& n : j["names"]) names.push_back(n.get<std::string>());
    return FiniteGroup::from_multiplication_table(std::move(table), std::move(names));
  }
  throw InputError("group document needs \"mul\", \"degree\", \"cyclic\" or \"symmetric\"");
}

GroupAction action_from_json(const json& j) {
  if (!j.contains("group")) throw InputError("action document needs a \"group\"");
  GroupAction a;
  a.group = group_from_json(j["group"]);
  a.points = require_int(j, "points");
  if (!j.contains("act")) throw InputError("action document needs an \"act\" table");
  for (const auto& row : j["act"]) a.table.push_back(int_list(row, "act row"));
  try {
    a.validate();
  } catch (const InputError& e) {
    throw ValidationError(e.what());
  }
  return a;
}

GroupoidDocument groupoid_from_json(const json& j) {
  GroupoidDocument doc;
  if (j.contains("action")) {
    doc.kind = "action";
    doc.action = action_from_json(j["action"]);
    doc.groupoid = action_groupoid(*doc.action);
    return doc;
  }
  if (j.contains("point_quotient")) {
    doc.kind = "point_quotient";
    doc.action = trivial_action(group_from_json(j["point_quotient"]), 1);
    doc.groupoid = action_groupoid(*doc.action);
    return doc;
  }
  if (j.contains("cone")) {
    doc.kind = "cone";
    doc.action = cone_point_model(j["cone"].get<int>());
    doc.groupoid = action_groupoid(*doc.action);
    return doc;
  }
  if (j.contains("unit")) {
    doc.kind = "unit";
    doc.groupoid = unit_groupoid(j["unit"].get<int>());
    return doc;
  }

  doc.kind = "tables";
  Groupoid::Tables t;
  t.objects = require_int(j, "objects");
  if (!j.contains("arrows")) throw InputError("groupoid document needs \"arrows\"");
  for (const auto& a : j["arrows"]) {
    int id = require_int(a, "id");
    if (id != static_cast<int>(t.src.size()))
      throw InputError("arrow ids must be consecutive from 0");
    t.src.push_back(require_int(a, "src"));
    t.tgt.push_back(require_int(a, "tgt"));
  }
  t.unit = int_list(j.value("units", json::array()), "units");
  t.inverse = int_list(j.value("inv", json::array()), "inv");
  if (!j.contains("comp")) throw InputError("groupoid document needs a \"comp\" table");
  for (const auto& c : j["comp"]) {
    auto triple = int_list(c, "comp entry");
    if (triple.size() != 3) throw InputError("comp entries must be triples");
    t.compositions.push_back({triple[0], triple[1], triple[2]});
  }
  doc.groupoid = Groupoid::from_tables(std::move(t));
  if (auto v = validate(*doc.groupoid))
    throw ValidationError("groupoid axioms violated (" + v->rule + "): " + v->detail);
  return doc;
}

Matrix matrix_from_json(const json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw InputError("matrix has wrong row count");
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw InputError("matrix has wrong column count");
    for (int c = 0; c < cols; ++c) {
      const auto& entry = row[c];
      if (entry.is_number()) {
        m(r, c) = entry.get<double>();
      } else if (entry.is_array() && entry.size() == 2) {
        m(r, c) = std::complex<double>(entry[0].get<double>(), entry[1].get<double>());
      } else {
        throw InputError("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

FiniteGroup load_group(const std::string& text) { return group_from_json(parse(text)); }

GroupAction load_action(const std::string& text) { return action_from_json(parse(text)); }

GroupoidDocument load_groupoid_document(const std::string& text) {
  return groupoid_from_json(parse(text));
}

VectorBundle load_bundle(const std::string& text, GroupoidPtr base) {
  json j = parse(text);
  VectorBundle e;
  if (j.contains("base")) {
    e.base = groupoid_from_json(j["base"]).groupoid;
  } else if (base) {
    e.base = std::move(base);
  } else {
    throw InputError("bundle document has no \"base\" and none was supplied");
  }
  e.fiber_dim = int_list(j.value("dims", json::array()), "dims");
  if (static_cast<int>(e.fiber_dim.size()) != e.base->objects())
    throw InputError("bundle \"dims\" length must match the object count");
  e.action.resize(e.base->arrows());
  const json matrices = j.value("matrices", json::object());
  for (auto it = matrices.begin(); it != matrices.end(); ++it) {
    size_t pos = 0;
    int id = -1;
    try {
      id = std::stoi(it.key(), &pos);
    } catch (const std::exception&) {
    }
    if (pos != it.key().size() || id < 0 || id >= e.base->arrows())
      throw InputError("bundle matrix key \"" + it.key() + "\" is not an arrow id");
  }
  for (int a = 0; a < e.base->arrows(); ++a) {
    const int rows = e.fiber_dim[e.base->tgt(a)];
    const int cols = e.fiber_dim[e.base->src(a)];
    auto it = matrices.find(std::to_string(a));
    if (it != matrices.end()) {
      e.action[a] = matrix_from_json(*it, rows, cols);
    } else if (rows == cols) {
      e.action[a] = Matrix::Identity(rows, cols);
    } else {
      throw InputError("bundle matrix missing for non-square arrow " + std::to_string(a));
    }
  }
  if (auto v = bundle_validate(e))
    throw ValidationError("bundle laws violated (" + v->rule + "): " + v->detail);
  return e;
}

HomDocument load_hom_document(const std::string& text) {
  json j = parse(text);
  if (!j.contains("dom") || !j.contains("cod") || !j.contains("hom"))
    throw InputError("hom document needs \"dom\", \"cod\" and \"hom\"");
  HomDocument doc;
  doc.dom = groupoid_from_json(j["dom"]).groupoid;
  doc.cod = groupoid_from_json(j["cod"]).groupoid;
  doc.hom.dom = doc.dom;
  doc.hom.cod = doc.cod;
  doc.hom.obj_map = int_list(j["hom"].value("obj_map", json::array()), "obj_map");
  doc.hom.arr_map = int_list(j["hom"].value("arr_map", json::array()), "arr_map");
  return doc;
}

std::string save_group(const FiniteGroup& g) {
  json j;
  j["order"] = g.order();
  json mul = json::array();
  for (int a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (int b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    mul.push_back(std::move(row));
  }
  j["mul"] = std::move(mul);
  if (!g.names().empty()) j["names"] = g.names();
  return j.dump();
}

std::string save_groupoid(const Groupoid& g) {
  json j;
  j["objects"] = g.objects();
  json arrows = json::array();
  for (int a = 0; a < g.arrows(); ++a)
    arrows.push_back({{"id", a}, {"src", g.src(a)}, {"tgt", g.tgt(a)}});
  j["arrows"] = std::move(arrows);
  json units = json::array(), inv = json::array();
  for (int x = 0; x < g.objects(); ++x) units.push_back(g.unit(x));
  for (int a = 0; a < g.arrows(); ++a) inv.push_back(g.inverse(a));
  j["units"] = std::move(units);
  j["inv"] = std::move(inv);
  json comp = json::array();
  for (int a = 0; a < g.arrows(); ++a)
    for (int b : g.arrows_from(g.tgt(a))) comp.push_back({a, b, g.compose(a, b)});
  j["comp"] = std::move(comp);
  return j.dump();
}

std::string save_hom_document(const GroupoidHom& f) {
  json j;
  j["dom"] = json::parse(save_groupoid(*f.dom));
  j["cod"] = json::parse(save_groupoid(*f.cod));
  j["hom"] = {{"obj_map", f.obj_map}, {"arr_map", f.arr_map}};
  return j.dump();
}

std::string save_bundle(const VectorBundle& e, bool include_base) {
  json j;
  if (include_base) j["base"] = json::parse(save_groupoid(*e.base));
  j["dims"] = e.fiber_dim;
  json matrices = json::object();
  for (int a = 0; a < e.base->arrows(); ++a) matrices[std::to_string(a)] = matrix_to_json(e.action[a]);
  j["matrices"] = std::move(matrices);
  return j.dump();
}

}  // namespace orb
