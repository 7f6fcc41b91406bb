#pragma once

#include <optional>
#include <string>

#include "orb/bundle.hpp"
#include "orb/groupoid.hpp"

namespace orb {

// Document loaders. All take UTF-8 JSON text; parse failures raise InputError
// with the location, semantic defects raise ValidationError. Shorthand
// constructors expand at load:
//   groups:    {"order": n, "mul": [[..]], "names": [..]}
//              {"degree": d, "generators": [[perm], ..]}
//              {"cyclic": n} | {"symmetric": n}
//   actions:   {"group": <group>, "points": m, "act": [[..]]}
//   groupoids: {"objects": n, "arrows": [{"id","src","tgt"}..],
//               "units": [..], "inv": [..], "comp": [[a,b,ab]..]}
//              {"action": <action>} | {"point_quotient": <group>}
//              {"cone": n} | {"unit": n}

FiniteGroup load_group(const std::string& text);

GroupAction load_action(const std::string& text);

struct GroupoidDocument {
  GroupoidPtr groupoid;
  std::optional<GroupAction> action;  // set when the document described an action
  std::string kind;                   // "tables", "action", "point_quotient", "cone", "unit"
};

GroupoidDocument load_groupoid_document(const std::string& text);

/// Bundle document: {"base": <groupoid>, "dims": [..],
/// "matrices": {"<arrow id>": [[[re,im],..],..], ..}}. A missing matrix
/// defaults to the identity (square fibres only). When base is supplied by
/// the caller the document's "base" field may be omitted.
VectorBundle load_bundle(const std::string& text, GroupoidPtr base = nullptr);

/// Hom document: {"dom": <groupoid>, "cod": <groupoid>,
/// "hom": {"obj_map": [..], "arr_map": [..]}}.
struct HomDocument {
  GroupoidPtr dom, cod;
  GroupoidHom hom;
};

HomDocument load_hom_document(const std::string& text);

std::string save_group(const FiniteGroup& g);
std::string save_groupoid(const Groupoid& g);
std::string save_hom_document(const GroupoidHom& f);
std::string save_bundle(const VectorBundle& e, bool include_base = true);

}  // namespace orb
