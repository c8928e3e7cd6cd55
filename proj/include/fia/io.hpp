#pragma once

#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fia/classify.hpp"
#include "fia/cohomology.hpp"
#include "fia/involution.hpp"
#include "fia/verify_theorems.hpp"

namespace fia {

using Json = nlohmann::ordered_json;

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

// {"elements": ["0","a","b","1"], "covers": [["0","a"], ...]}
inline PosetPtr poset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("covers"))
    throw ParseError("poset file needs 'elements' and 'covers'");
  std::vector<std::string> elements;
  for (const auto& e : j.at("elements")) {
    if (!e.is_string()) throw ParseError("poset elements must be strings");
    elements.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& c : j.at("covers")) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
      throw ParseError("each cover must be a pair of element labels");
    covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
  }
  return build_poset(std::move(elements), covers);
}

inline Json poset_to_json(const FinitePoset& poset) {
  Json j;
  j["elements"] = poset.labels();
  Json covers = Json::array();
  for (const auto& [x, y] : poset.cover_pairs())
    covers.push_back(Json::array({poset.label(x), poset.label(y)}));
  j["covers"] = covers;
  return j;
}

// {"map": {"0":"1","1":"0","a":"a","b":"b"}}
inline PosetMap poset_involution_from_json(PosetPtr poset, const Json& j) {
  if (!j.is_object() || !j.contains("map")) throw ParseError("involution file needs 'map'");
  std::vector<int> image(poset->size(), -1);
  for (const auto& [from, to] : j.at("map").items()) {
    if (!to.is_string()) throw ParseError("involution map values must be labels");
    image[poset->index_of(from)] = poset->index_of(to.get<std::string>());
  }
  for (int x = 0; x < poset->size(); ++x)
    if (image[x] < 0)
      throw ParseError("involution map misses element '" + poset->label(x) + "'");
  return make_poset_involution(std::move(poset), std::move(image));
}

inline Json poset_map_to_json(const PosetMap& m) {
  Json inner = Json::object();
  for (int x = 0; x < m.poset->size(); ++x)
    inner[m.poset->label(x)] = m.poset->label(m.image[x]);
  Json j;
  j["map"] = inner;
  return j;
}

// {"type":"gaussian_rational"} or {"type":"gf_p2","p":3}
struct FieldDescriptor {
  enum class Type { GaussianRational, GFp2 };
  Type type = Type::GaussianRational;
  int p = 0;
};

// --field {qi | gf:p}
inline FieldDescriptor parse_field_flag(const std::string& flag) {
  if (flag == "qi") return FieldDescriptor{FieldDescriptor::Type::GaussianRational, 0};
  if (flag.rfind("gf:", 0) == 0) {
    int p;
    try {
      p = std::stoi(flag.substr(3));
    } catch (...) {
      throw ParseError("bad field flag '" + flag + "'");
    }
    return FieldDescriptor{FieldDescriptor::Type::GFp2, p};
  }
  throw ParseError("unknown field '" + flag + "' (expected qi or gf:p)");
}

inline FieldDescriptor field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) throw ParseError("field descriptor needs 'type'");
  auto type = j.at("type").get<std::string>();
  if (type == "gaussian_rational")
    return FieldDescriptor{FieldDescriptor::Type::GaussianRational, 0};
  if (type == "gf_p2") {
    if (!j.contains("p")) throw ParseError("gf_p2 descriptor needs 'p'");
    return FieldDescriptor{FieldDescriptor::Type::GFp2, j.at("p").get<int>()};
  }
  throw ParseError("unknown field type '" + type + "'");
}

inline Json field_to_json(const FieldDescriptor& d) {
  Json j;
  if (d.type == FieldDescriptor::Type::GaussianRational) {
    j["type"] = "gaussian_rational";
  } else {
    j["type"] = "gf_p2";
    j["p"] = d.p;
  }
  return j;
}

// {"entries": [{"from":"1","to":"2","value":"3/5+2/7i"}, ...]}
template <InvolutiveField F>
AlgebraElement<F> algebra_element_from_json(PosetPtr poset, const F& field, const Json& j) {
  if (!j.is_object() || !j.contains("entries"))
    throw ParseError("algebra element needs 'entries'");
  AlgebraElement<F> f(std::move(poset), field);
  for (const auto& e : j.at("entries")) {
    if (!e.contains("from") || !e.contains("to") || !e.contains("value"))
      throw ParseError("entry needs 'from', 'to' and 'value'");
    int x = f.poset()->index_of(e.at("from").get<std::string>());
    int y = f.poset()->index_of(e.at("to").get<std::string>());
    if (!f.poset()->leq(x, y))
      throw ParseError("entry (" + e.at("from").get<std::string>() + "," +
                       e.at("to").get<std::string>() + ") is not a comparable pair");
    f.set(x, y, field.parse(e.at("value").get<std::string>()));
  }
  return f;
}

template <InvolutiveField F>
Json algebra_element_to_json(const AlgebraElement<F>& f) {
  Json entries = Json::array();
  for (const auto& [p, v] : f.support()) {
    Json e;
    e["from"] = f.poset()->label(p.first);
    e["to"] = f.poset()->label(p.second);
    e["value"] = f.field().format(v);
    entries.push_back(e);
  }
  Json j;
  j["entries"] = entries;
  return j;
}

template <InvolutiveField F>
Cocycle<F> cocycle_from_json(PosetPtr poset, const F& field, const Json& j) {
  auto as_element = algebra_element_from_json(poset, field, j);
  std::map<std::pair<int, int>, typename F::Element> vals;
  for (const auto& p : poset->comparable_pairs()) vals[p] = as_element.at(p.first, p.second);
  return Cocycle<F>(poset, field, std::move(vals));
}

template <InvolutiveField F>
Json cocycle_to_json(const Cocycle<F>& sigma) {
  Json entries = Json::array();
  for (const auto& p : sigma.poset()->comparable_pairs()) {
    Json e;
    e["from"] = sigma.poset()->label(p.first);
    e["to"] = sigma.poset()->label(p.second);
    e["value"] = sigma.field().format(sigma.at(p.first, p.second));
    entries.push_back(e);
  }
  Json j;
  j["entries"] = entries;
  return j;
}

// Involution files: either the epsilon form
//   {"lambda": {"0":"1",...}, "epsilon": {"a":"1","b":"3"}}
// or the general form
//   {"basis_images": [{"from":..,"to":..,"image":{"entries":[..]}}], "i_image": "-1i"}
template <InvolutiveField F>
InvolutionMap<F> involution_from_json(PosetPtr poset, const F& field, const Json& j) {
  if (j.contains("lambda")) {
    Json lj;
    lj["map"] = j.at("lambda");
    auto lambda = poset_involution_from_json(poset, lj);
    std::map<int, typename F::Element> eps;
    if (j.contains("epsilon"))
      for (const auto& [label, value] : j.at("epsilon").items())
        eps[poset->index_of(label)] = field.parse(value.template get<std::string>());
    if (eps.empty()) {
      auto dec = lambda_decomposition(lambda);
      for (int x : dec.x3) eps[x] = field.one();
    }
    return build_rho_epsilon(poset, field, lambda, eps).rho;
  }
  if (!j.contains("basis_images") || !j.contains("i_image"))
    throw ParseError("involution file needs 'lambda' or 'basis_images' + 'i_image'");

  auto i_val = field.parse(j.at("i_image").get<std::string>());
  bool second;
  if (i_val == field.star(field.i()) && !(field.star(field.i()) == field.i()))
    second = true;
  else if (i_val == field.i())
    second = false;
  else
    throw NotScalarStable("i_image must be the image of i under the identity or *");

  typename InvolutionMap<F>::Images images;
  for (const auto& entry : j.at("basis_images")) {
    if (!entry.contains("from") || !entry.contains("to") || !entry.contains("image"))
      throw ParseError("basis image entry needs 'from', 'to' and 'image'");
    int x = poset->index_of(entry.at("from").get<std::string>());
    int y = poset->index_of(entry.at("to").get<std::string>());
    images.emplace(std::make_pair(x, y),
                   algebra_element_from_json(poset, field, entry.at("image")));
  }
  return InvolutionMap<F>(poset, field, std::move(images), second);
}

template <InvolutiveField F>
Json involution_to_json(const InvolutionMap<F>& rho) {
  Json images = Json::array();
  for (const auto& [p, img] : rho.images()) {
    Json e;
    e["from"] = rho.poset()->label(p.first);
    e["to"] = rho.poset()->label(p.second);
    e["image"] = algebra_element_to_json(img);
    images.push_back(e);
  }
  Json j;
  j["basis_images"] = images;
  j["i_image"] = rho.field().format(rho.scalar_action(rho.field().i()));
  return j;
}

// {"verdict":"equivalent","witness":{...},"checked":true} or
// {"verdict":"not_equivalent","obstruction":{"kind":"coset_mismatch","at":"b","ratio":"3"}}
template <InvolutiveField F>
Json equivalence_report_to_json(const EquivalenceReport<F>& report, const F& field) {
  Json j;
  if (report.equivalent) {
    j["verdict"] = "equivalent";
    Json w;
    if (report.alpha) w["alpha"] = poset_map_to_json(*report.alpha)["map"];
    if (report.u) w["u"] = algebra_element_to_json(*report.u);
    j["witness"] = w;
    j["checked"] = report.checked;
  } else {
    j["verdict"] = "not_equivalent";
    Json o;
    switch (report.obstruction->kind) {
      case Obstruction<F>::Kind::DifferentLambdaClass:
        o["kind"] = "different_lambda_class";
        break;
      case Obstruction<F>::Kind::DifferentScalarAction:
        o["kind"] = "different_scalar_action";
        break;
      case Obstruction<F>::Kind::CosetMismatch:
        o["kind"] = "coset_mismatch";
        o["at"] = report.obstruction->at;
        o["ratio"] = field.format(*report.obstruction->ratio);
        break;
    }
    if (!report.obstruction->detail.empty()) o["detail"] = report.obstruction->detail;
    j["obstruction"] = o;
  }
  return j;
}

inline Json h1_to_json(const H1Verdict& v) {
  Json j;
  j["trivial"] = v.trivial;
  j["free_rank"] = v.free_rank;
  j["torsion"] = v.torsion;
  j["unity_order"] = v.unity_order;
  return j;
}

inline Json theorem_report_to_json(const TheoremReport& rep) {
  Json arr = Json::array();
  for (const auto& c : rep.checks) {
    Json j;
    j["check"] = c.name;
    j["status"] = c.status == TheoremCheck::Status::Pass   ? "pass"
                  : c.status == TheoremCheck::Status::Fail ? "fail"
                                                           : "skip";
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace fia
