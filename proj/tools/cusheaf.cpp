#include "cusheaf/action.hpp"
#include "cusheaf/error.hpp"
#include "cusheaf/io.hpp"
#include "cusheaf/laws.hpp"
#include "cusheaf/limits.hpp"
#include "cusheaf/models.hpp"
#include "cusheaf/sheaf.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace cusheaf;
using cusheaf::io::json;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size()))
    s.replace(at, from.size(), to);
  return s;
}

/// Element or section document, viewed as a section.
Section load_section(const io::Reader& r, const FieldPtr& F, const std::string& path) {
  json j = r.resolve(json(path), "");
  if (j.contains("cover")) return pcs_eval(r.section(F, j));
  return induced_section(r.element(F, j));
}

std::string fiber_name(std::size_t arity) { return arity == 1 ? "N̄" : "N̄^" + std::to_string(arity); }

int report(bool holds, const std::string& yes, const std::string& no, const std::string& witness = {}) {
  std::cout << (holds ? yes : no) << "\n";
  if (!holds && !witness.empty()) std::cout << "witness: " << witness << "\n";
  return holds ? kHolds : kFails;
}

int run_compare(const io::Reader& r, const FieldPtr& FA, const FieldPtr& FB, const std::string& via) {
  const auto& ea = FA->exceptional();
  const auto& eb = FB->exceptional();
  for (std::size_t i = 0; i < std::max(ea.size(), eb.size()); ++i) {
    const bool same = i < ea.size() && i < eb.size() && ea[i].site() == eb[i].site() && ea[i].arity() == eb[i].arity();
    if (same) continue;
    const auto& at = i < ea.size() ? ea[i] : eb[i];
    std::cout << "no extension: not-compatible: exceptional data differ at "
              << describe(FA->complex(), at.site()) << "\nwitness: " << describe(FA->complex(), at.site()) << "\n";
    return kFails;
  }
  IsoCandidate v = r.iso(FA, FB, json(via), "");
  IsoCandidate full;
  try {
    full = v_reconstruct(FA, FB, v);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotCompatible && e.kind() != ErrorKind::NotDense) throw;
    std::cout << "no extension: " << to_string(e.kind()) << ": " << e.what() << "\n";
    if (!e.witness().empty()) std::cout << "witness: " << e.witness() << "\n";
    return kFails;
  }
  const auto& X = FA->complex();
  for (const auto& [i, m] : full.fiber_maps) {
    std::cout << "fiber map at " << describe(X, FA->exceptional()[i].site()) << ": (";
    for (std::size_t k = 0; k < m.second.size(); ++k) std::cout << (k ? "," : "") << "a" << m.second[k];
    std::cout << ")\n";
  }
  std::vector<CellSet> opens;
  for (std::size_t e = 0; e < X.edge_count(); ++e) {
    const Q L = X.edge(e).length;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b <= 4; ++b) opens.push_back(cellset_from(FA->complex_ptr(), {{e, L * Q(a, 4), L * Q(b, 4)}}, {}, false));
  }
  auto samples = field_basis(FA, CellSet::whole(Subdivision(FA->complex_ptr())), 2, 4);
  auto rep = preserves_action_check(full, samples, opens);
  std::cout << "action check: " << rep.checked << " products\n";
  return report(rep.ok, "extends to an isomorphism preserving the action", "action not preserved", rep.witness);
}

int run_axioms(const io::Reader& r, const std::string& spec, unsigned bound, unsigned den) {
  auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  LawReport rep;
  if (kind == "extnat") {
    rep = axioms_suite(ExtNatModel(), bound, den);
  } else if (kind == "product") {
    rep = axioms_suite(ProductModel(arg.empty() ? 2 : std::stoul(arg)), bound, den);
  } else if (kind == "lsc") {
    rep = axioms_suite(StepModel::whole(r.space(json(arg.empty() ? "interval" : arg), "")), bound, den);
  } else if (kind == "sections") {
    FieldPtr F = r.field(json(arg.empty() ? "drop" : arg), "");
    rep = axioms_suite(FieldModel(F, CellSet::whole(Subdivision(F->complex_ptr()))), bound, den);
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown handle \"" + spec + "\" (extnat, product:k, lsc:<space>, sections:<field>)");
  }
  std::cout << rep.render();
  return rep.all_pass() ? kHolds : kFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cuntz semigroups of continuous fields over finite metric graphs"};
  app.require_subcommand(1);
  io::Reader reader;

  std::string field_a, field_b, arg1, arg2, arg3, at, via, handle;
  unsigned bound = 3, den = 6;
  std::size_t depth = 3;
  int code = kHolds;
  std::function<int()> action;

  auto* sheaf = app.add_subcommand("check-sheaf", "gluing map bijective on enumerated bases");
  sheaf->add_option("field", field_a)->required();
  sheaf->add_option("U", arg1, "closed patch")->required();
  sheaf->add_option("V", arg2, "closed patch")->required();
  sheaf->add_option("--bound", bound);
  sheaf->add_option("--den", den);
  sheaf->callback([&] {
    action = [&] {
      FieldPtr F = reader.field(json(field_a), "");
      auto rep = check_sheaf(F, reader.patch(F->complex_ptr(), json(arg1), ""), reader.patch(F->complex_ptr(), json(arg2), ""),
                             bound, den);
      std::cout << "checked " << rep.checked << " elements and compatible pairs\n";
      return report(rep.ok, "sheaf condition holds", "sheaf condition fails", rep.witness);
    };
  });

  for (const char* name : {"leq", "waybelow"}) {
    const bool way = std::string(name) == "waybelow";
    auto* cmd = app.add_subcommand(name, way ? "compact containment a << b" : "order a <= b");
    cmd->add_option("field", field_a)->required();
    cmd->add_option("a", arg1)->required();
    cmd->add_option("b", arg2)->required();
    cmd->callback([&, way] {
      action = [&, way] {
        FieldPtr F = reader.field(json(field_a), "");
        Section a = load_section(reader, F, arg1);
        Section b = load_section(reader, F, arg2);
        const std::string na = stem(arg1), nb = stem(arg2);
        if (!way) return report(section_leq(a, b), na + " <= " + nb, na + " is not <= " + nb);
        bool holds = section_waybelow(a, b);
        std::string w;
        if (!holds) {
          auto fw = field_waybelow_witness(section_to_field(a), section_to_field(b));
          w = replace_all(replace_all(fw.value_or(""), "{f≥", "{" + na + "≥"), "{g≥", "{" + nb + "≥");
        }
        return report(holds, na + " << " + nb, na + " is not way below " + nb, w);
      };
    });
  }

  auto* st = app.add_subcommand("stalk", "germ semigroup at a point");
  st->add_option("field", field_a)->required();
  st->add_option("--at", at, "<edge>:<num>/<den> or a vertex name")->required();
  st->add_option("--bound", bound);
  st->callback([&] {
    action = [&] {
      FieldPtr F = reader.field(json(field_a), "");
      Site x = io::parse_site(F->complex(), at);
      CuColimit c = stalk(F, x, bound);
      std::cout << "stalk at " << describe(F->complex(), x) << ": " << fiber_name(c.arity) << "\n";
      std::cout << "evaluation: " << c.witness << "\n";
      return report(c.iso_verified, "evaluation is an isomorphism on germs up to " + std::to_string(bound),
                    "evaluation is not an isomorphism");
    };
  });

  auto* dec = app.add_subcommand("decompose", "rapidly increasing PCS chain of a section");
  dec->add_option("field", field_a)->required();
  dec->add_option("section", arg1)->required();
  dec->add_option("--depth", depth);
  dec->callback([&] {
    action = [&] {
      FieldPtr F = reader.field(json(field_a), "");
      Section f = load_section(reader, F, arg1);
      GammaElement g = decompose(f, depth);
      std::vector<Section> evals;
      bool rapid = true;
      for (std::size_t j = 0; j < g.chain.size(); ++j) {
        evals.push_back(pcs_eval(g.chain[j]));
        std::cout << "step " << j << " (" << g.chain[j].cover.size() << " sets): " << evals.back().describe() << "\n";
        if (j > 0 && !section_waybelow(evals[j - 1], evals[j])) rapid = false;
      }
      Section sup = chain_sup(evals, f.sub());
      std::cout << "supremum: " << sup.describe() << "\n";
      std::cout << "rapidly increasing: " << (rapid ? "yes" : "no") << "\n";
      return report(rapid && section_equal(sup, f), "supremum reproduces the input", "supremum differs from the input");
    };
  });

  auto* ac = app.add_subcommand("act", "pointwise action of an lsc function on a section");
  ac->add_option("f", arg1)->required();
  ac->add_option("section", arg2)->required();
  ac->add_option("--field", field_a, "field when the section document has none");
  ac->callback([&] {
    action = [&] {
      json sj = reader.resolve(json(arg2), "");
      FieldPtr F = reader.field(sj.contains("field") ? sj["field"] : json(field_a.empty() ? "trivial" : field_a), "/field");
      StepFn f = reader.function(F->complex_ptr(), json(arg1), "");
      Section s = sj.contains("cover") ? pcs_eval(reader.section(F, sj)) : induced_section(reader.element(F, sj));
      std::cout << act(f, s).describe() << "\n";
      return kHolds;
    };
  });

  auto* cp = app.add_subcommand("compacts", "elements x with x << x");
  cp->add_option("field", field_a)->required();
  cp->add_option("patch", arg1, "closed patch or \"whole\"")->required();
  cp->add_option("--bound", bound);
  cp->add_option("--den", den);
  cp->callback([&] {
    action = [&] {
      FieldPtr F = reader.field(json(field_a), "");
      auto c = compacts(FieldModel(F, reader.patch(F->complex_ptr(), json(arg1), "")), bound, den);
      std::cout << c.size() << " compact elements\n";
      for (const auto& x : c) std::cout << x.describe() << "\n";
      return kHolds;
    };
  });

  auto* cmp = app.add_subcommand("compare", "extend a compact-level isomorphism and check the action");
  cmp->add_option("fieldA", field_a)->required();
  cmp->add_option("fieldB", field_b)->required();
  cmp->add_option("--via", via)->required();
  cmp->callback([&] {
    action = [&] { return run_compare(reader, reader.field(json(field_a), ""), reader.field(json(field_b), ""), via); };
  });

  auto* ax = app.add_subcommand("axioms", "Cu axiom laws on an enumerated basis");
  ax->add_option("handle", handle, "extnat | product:k | lsc:<space> | sections:<field>")->required();
  ax->add_option("--bound", bound);
  ax->add_option("--den", den);
  ax->callback([&] { action = [&] { return run_axioms(reader, handle, bound, den); }; });

  auto* pe = app.add_subcommand("paper-example", "germ colimits at the midpoint of [0,1]");
  pe->callback([&] {
    action = [&] {
      WorkedExample w = worked_example(4);
      std::cout << w.render();
      const bool ok = w.sg_matches_triples && w.cu.iso_verified && w.kernel_is_point_evaluation;
      std::cout << "Cu-limit: " << fiber_name(w.cu.arity) << "; Sg-limit: {(a,b,c) : b <= a, b <= c}\n";
      return ok ? kHolds : kFails;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kHolds : kInputError;
  }
  try {
    code = action();
  } catch (const Error& e) {
    std::cout << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    if (!e.witness().empty()) std::cout << "witness: " << e.witness() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}
