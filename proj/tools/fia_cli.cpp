// Batch front door: validate posets, decompose and classify involutions,
// and run the brute-force theorem oracle. All inputs and outputs are JSON;
// outputs are byte-stable for identical inputs.
//
// Exit codes: 0 pass, 1 verdict-negative, 2 input error, 3 budget exceeded.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "fia/io.hpp"
#include "fia/oracle.hpp"
#include "fia/poset_enum.hpp"

namespace {

using fia::Json;

struct CommonArgs {
  std::string poset_file;
  std::string field_flag = "qi";
  std::string json_out;
  long long budget = 0;
};

fia::EnumerationBudget make_budget(const CommonArgs& args) {
  fia::EnumerationBudget b;
  if (args.budget > 0) {
    b.max_units = args.budget;
    b.max_orbit = args.budget;
  }
  return b;
}

void emit(const CommonArgs& args, const Json& j) {
  std::cout << j.dump(2) << "\n";
  if (!args.json_out.empty()) fia::save_json_file(args.json_out, j);
}

template <class F>
int run_validate(fia::PosetPtr poset, const F& field, const CommonArgs& args) {
  Json out;
  out["poset"] = fia::poset_to_json(*poset);
  bool connected = fia::is_connected(*poset);
  out["connected"] = connected;
  auto c = fia::center(poset, field);
  out["center_dimension"] = c.dimension;

  bool h1_ok = false;
  if (connected) {
    auto h1 = fia::h1_trivial(poset, field);
    out["h1"] = fia::h1_to_json(h1);
    h1_ok = h1.trivial;
  } else {
    out["h1"] = nullptr;
  }

  Json invs = Json::array();
  for (const auto& lambda : fia::enumerate_involutions(poset)) {
    Json j;
    j["lambda"] = fia::poset_map_to_json(lambda)["map"];
    auto dec = fia::lambda_decomposition(lambda);
    auto labels = [&](const std::vector<int>& xs) {
      Json a = Json::array();
      for (int x : xs) a.push_back(poset->label(x));
      return a;
    };
    j["x1"] = labels(dec.x1);
    j["x2"] = labels(dec.x2);
    j["x3"] = labels(dec.x3);
    invs.push_back(j);
  }
  out["involutions"] = invs;
  emit(args, out);
  return connected && h1_ok ? 0 : 1;
}

template <class F>
int run_decompose(fia::PosetPtr poset, const F& field, const std::string& rho_file,
                  const CommonArgs& args) {
  auto rho = fia::involution_from_json(poset, field, fia::load_json_file(rho_file));
  auto check = fia::is_involution(rho);
  Json out;
  if (!check.ok) {
    out["error"] = "not an involution";
    out["violated"] = check.reason;
    emit(args, out);
    return 1;
  }
  try {
    auto dec = fia::decompose(rho);
    out["f"] = fia::algebra_element_to_json(dec.f);
    out["sigma"] = fia::cocycle_to_json(dec.sigma);
    out["lambda"] = fia::poset_map_to_json(dec.lambda)["map"];
    out["scalar_action"] = rho.second_kind() ? "star" : "identity";
    emit(args, out);
    return 0;
  } catch (const fia::DecompositionFailure& e) {
    out["error"] = "decomposition failed";
    out["violated"] = e.what();
    emit(args, out);
    return 1;
  }
}

template <class F>
int run_classify(fia::PosetPtr poset, const F& field, const std::string& rho1_file,
                 const std::string& rho2_file, bool inner_only, const CommonArgs& args) {
  auto rho1 = fia::involution_from_json(poset, field, fia::load_json_file(rho1_file));
  auto rho2 = fia::involution_from_json(poset, field, fia::load_json_file(rho2_file));
  for (const auto* rho : {&rho1, &rho2}) {
    auto check = fia::is_involution(*rho);
    if (!check.ok) throw fia::InvalidInvolution(check.reason);
  }
  auto report = inner_only ? fia::inner_equivalent(rho1, rho2) : fia::equivalent(rho1, rho2);
  emit(args, fia::equivalence_report_to_json(report, field));
  return report.equivalent ? 0 : 1;
}

int run_oracle(fia::PosetPtr poset, int p, const CommonArgs& args) {
  fia::GFp2Field field(p);
  auto report = fia::verify_theorems(poset, field, make_budget(args));
  Json lines = fia::theorem_report_to_json(report);
  for (auto& rec : lines) {
    rec["field"] = field.name();
    std::cout << rec.dump() << "\n";
  }
  if (!args.json_out.empty()) {
    std::ofstream out(args.json_out);
    for (const auto& rec : lines) out << rec.dump() << "\n";
  }
  return report.all_passed() ? 0 : 1;
}

template <class Fn>
int dispatch_field(const std::string& flag, Fn&& fn) {
  auto desc = fia::parse_field_flag(flag);
  if (desc.type == fia::FieldDescriptor::Type::GaussianRational)
    return fn(fia::GaussianRationalField{});
  return fn(fia::GFp2Field(desc.p));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"involutions of the second kind on finite incidence algebras"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string rho1_file, rho2_file;
  bool inner_only = false;

  auto add_common = [&](CLI::App* cmd, bool with_field) {
    cmd->add_option("--json", args.json_out, "write the report to this file as well");
    cmd->add_option("--budget", args.budget, "enumeration budget override");
    if (with_field)
      cmd->add_option("--field", args.field_flag, "coefficient field: qi or gf:p");
  };

  auto* validate = app.add_subcommand(
      "validate", "connectedness, center, H^1 and poset involutions of a poset file");
  validate->add_option("poset", args.poset_file, "poset JSON file")->required();
  add_common(validate, true);

  auto* decompose =
      app.add_subcommand("decompose", "factor an involution as Psi o M o rho_lambda^*");
  decompose->add_option("rho", rho1_file, "involution JSON file")->required();
  decompose->add_option("--poset", args.poset_file, "poset JSON file")->required();
  add_common(decompose, true);

  auto* classify = app.add_subcommand("classify", "decide equivalence of two involutions");
  classify->add_option("rho1", rho1_file, "first involution JSON file")->required();
  classify->add_option("rho2", rho2_file, "second involution JSON file")->required();
  classify->add_option("--poset", args.poset_file, "poset JSON file")->required();
  classify->add_flag("--inner-only", inner_only, "restrict to inner automorphisms");
  add_common(classify, true);

  auto* oracle = app.add_subcommand(
      "oracle", "run every constructive theorem check against brute force (finite field)");
  oracle->add_option("poset", args.poset_file, "poset JSON file")->required();
  oracle->add_option("--field", args.field_flag, "finite field gf:p")->required();
  oracle->add_option("--json", args.json_out, "write JSON-lines report to this file");
  oracle->add_option("--budget", args.budget, "enumeration budget override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    auto poset = fia::poset_from_json(fia::load_json_file(args.poset_file));
    if (validate->parsed())
      return dispatch_field(args.field_flag,
                            [&](const auto& field) { return run_validate(poset, field, args); });
    if (decompose->parsed())
      return dispatch_field(args.field_flag, [&](const auto& field) {
        return run_decompose(poset, field, rho1_file, args);
      });
    if (classify->parsed())
      return dispatch_field(args.field_flag, [&](const auto& field) {
        return run_classify(poset, field, rho1_file, rho2_file, inner_only, args);
      });
    if (oracle->parsed()) {
      auto desc = fia::parse_field_flag(args.field_flag);
      if (desc.type != fia::FieldDescriptor::Type::GFp2)
        throw fia::ParseError("oracle runs need a finite field (gf:p)");
      return run_oracle(poset, desc.p, args);
    }
  } catch (const fia::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const fia::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
