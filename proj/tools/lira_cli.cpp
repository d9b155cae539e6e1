// lira: exact-arithmetic kernel for finite-dimensional Lie-Rinehart algebras.
// Exit codes: 0 success, 1 validation failure, 2 usage error.

#include "lira/io.hpp"
#include "lira/lira.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using lira::io::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t degree_cap() {
  if (const char* env = std::getenv("LIRA_MAX_DEGREE")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 0) return static_cast<std::size_t>(v);
  }
  return 3;
}

void check_degree(std::size_t n) {
  if (n > degree_cap())
    throw UsageError("degree " + std::to_string(n) + " exceeds the cap " +
                     std::to_string(degree_cap()) + " (raise LIRA_MAX_DEGREE)");
}

lira::LieRinehartAlgebra load_algebra(const std::string& file, const std::string& builtin_name,
                                      bool validated = true) {
  if (!builtin_name.empty() && !file.empty())
    throw UsageError("give either a file or --builtin, not both");
  if (!builtin_name.empty()) return lira::builtin(builtin_name);
  if (file.empty()) throw UsageError("an algebra is required (file or --builtin)");
  if (file.rfind("builtin:", 0) == 0) return lira::builtin(file.substr(8));
  if (validated) return lira::io::parse_algebra(file);
  return lira::io::algebra_from_json(lira::io::load_document(file));
}

void emit(const json& report, bool as_json) {
  if (as_json) {
    std::cout << report.dump() << "\n";
    return;
  }
  for (const auto& [key, value] : report.items())
    std::cout << key << ": " << value.dump() << "\n";
}

json issues_to_json(const lira::ValidationReport& rep) {
  json arr = json::array();
  for (const auto& issue : rep.issues) {
    json j;
    j["axiom"] = issue.axiom;
    j["where"] = issue.where;
    arr.push_back(std::move(j));
  }
  return arr;
}

struct AlgebraArgs {
  std::string file;
  std::string builtin_name;
  bool as_json = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("file", file, "algebra file (or builtin:<name>)");
    cmd->add_option("--builtin", builtin_name, "builtin algebra name");
    cmd->add_flag("--json", as_json, "machine-readable output");
  }
};

int run(int argc, char** argv) {
  CLI::App app{"exact-arithmetic kernel for finite-dimensional Lie-Rinehart algebras"};
  app.require_subcommand(1);

  // check
  auto* cmd_check = app.add_subcommand("check", "validate every axiom of an algebra file");
  AlgebraArgs check_args;
  check_args.attach(cmd_check);

  // center / commutator
  auto* cmd_center = app.add_subcommand("center", "compute Z_A(L)");
  AlgebraArgs center_args;
  center_args.attach(cmd_center);
  auto* cmd_comm = app.add_subcommand("commutator", "compute {L, L} and perfectness");
  AlgebraArgs comm_args;
  comm_args.attach(cmd_comm);

  // uce
  auto* cmd_uce = app.add_subcommand("uce", "build the universal central extension functor value");
  AlgebraArgs uce_args;
  uce_args.attach(cmd_uce);

  // cohomology / homology
  AlgebraArgs coh_args, hom_args;
  std::string coh_module, hom_module;
  std::size_t coh_trivial = 0, hom_trivial = 0, coh_degree = 0, hom_degree = 0;
  auto* cmd_coh = app.add_subcommand("cohomology", "Rinehart cohomology dimensions");
  coh_args.attach(cmd_coh);
  cmd_coh->add_option("--module", coh_module, "left module file");
  cmd_coh->add_option("--trivial-module", coh_trivial, "trivial left module of this dimension");
  cmd_coh->add_option("--degree", coh_degree, "top degree")->required();
  auto* cmd_hom = app.add_subcommand("homology", "Rinehart homology dimensions");
  hom_args.attach(cmd_hom);
  cmd_hom->add_option("--module", hom_module, "right module file");
  cmd_hom->add_option("--trivial-module", hom_trivial, "trivial right module of this dimension");
  cmd_hom->add_option("--degree", hom_degree, "top degree")->required();

  // compare-ce
  std::string cmp_lie, cmp_base = "rationals";
  std::size_t cmp_trivial = 1, cmp_degree = 2;
  bool cmp_json = false;
  auto* cmd_cmp = app.add_subcommand(
      "compare-ce", "Rinehart vs Chevalley-Eilenberg dimensions for a transformation algebra");
  cmd_cmp->add_option("--lie", cmp_lie, "sl2 | heisenberg | abelian(n)")->required();
  cmd_cmp->add_option("--base", cmp_base, "rationals | dual_numbers");
  cmd_cmp->add_option("--trivial-module", cmp_trivial, "trivial module dimension");
  cmd_cmp->add_option("--degree", cmp_degree, "top degree");
  cmd_cmp->add_flag("--json", cmp_json, "machine-readable output");

  // tensor
  AlgebraArgs tensor_args;
  std::string tensor_with, tensor_actions;
  bool tensor_hat = false;
  auto* cmd_tensor = app.add_subcommand("tensor", "non-abelian tensor product");
  tensor_args.attach(cmd_tensor);
  cmd_tensor->add_option("with", tensor_with, "second algebra (file or builtin:<name>)");
  cmd_tensor->add_option("--actions", tensor_actions, "action pair file");
  cmd_tensor->add_flag("--hat", tensor_hat, "hat tensor square with the uce certificate");

  // lift-aut / lift-der
  std::string cov_file_a, aut_file, cov_file_d, der_file;
  bool lift_aut_json = false, lift_der_json = false;
  auto* cmd_la = app.add_subcommand("lift-aut", "lift an automorphism along a covering");
  cmd_la->add_option("covering", cov_file_a, "covering morphism file")->required();
  cmd_la->add_option("automorphism", aut_file, "automorphism morphism file")->required();
  cmd_la->add_flag("--json", lift_aut_json, "machine-readable output");
  auto* cmd_ld = app.add_subcommand("lift-der", "lift a derivation along a covering");
  cmd_ld->add_option("covering", cov_file_d, "covering morphism file")->required();
  cmd_ld->add_option("derivation", der_file, "derivation file")->required();
  cmd_ld->add_flag("--json", lift_der_json, "machine-readable output");

  // pullback
  std::string pb_central, pb_f;
  bool pb_json = false;
  auto* cmd_pb = app.add_subcommand("pullback", "pullback of a central extension");
  cmd_pb->add_option("central", pb_central, "central extension morphism file")->required();
  cmd_pb->add_option("along", pb_f, "morphism file to pull back along")->required();
  cmd_pb->add_flag("--json", pb_json, "machine-readable output");

  // split-uce
  std::string su_f, su_g, su_s;
  bool su_json = false;
  auto* cmd_su = app.add_subcommand("split-uce", "split exact sequence uce theorem checks");
  cmd_su->add_option("--f", su_f, "injection morphism file")->required();
  cmd_su->add_option("--g", su_g, "surjection morphism file")->required();
  cmd_su->add_option("--s", su_s, "section morphism file")->required();
  cmd_su->add_flag("--json", su_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cmd_check->parsed()) {
    const auto l = load_algebra(check_args.file, check_args.builtin_name, false);
    lira::ValidationReport rep = lira::validate_comm_algebra(l.base);
    rep.merge(lira::validate_lr(l));
    json out;
    out["valid"] = rep.ok();
    out["issues"] = issues_to_json(rep);
    emit(out, check_args.as_json);
    return rep.ok() ? 0 : 1;
  }
  if (cmd_center->parsed()) {
    const auto l = load_algebra(center_args.file, center_args.builtin_name);
    const lira::Subspace z = lira::center(l);
    json out;
    out["dim"] = z.rank();
    out["basis"] = lira::io::matrix_to_json(z.basis);
    emit(out, center_args.as_json);
    return 0;
  }
  if (cmd_comm->parsed()) {
    const auto l = load_algebra(comm_args.file, comm_args.builtin_name);
    const lira::Subspace c = lira::derived_subspace(l);
    json out;
    out["dim"] = c.rank();
    out["perfect"] = c.rank() == l.dim;
    emit(out, comm_args.as_json);
    return 0;
  }
  if (cmd_uce->parsed()) {
    const auto l = load_algebra(uce_args.file, uce_args.builtin_name);
    const lira::UceAlgebra u = lira::build_uce(l);
    json out;
    out["quotient_dim"] = u.algebra.dim;
    out["kernel_dim"] = u.uce_kernel.rank();
    out["perfect"] = lira::is_perfect(l);
    out["central"] = lira::center(u.algebra).contains(u.uce_kernel);
    out["image_is_commutator"] =
        lira::image(u.uce_morphism.matrix) == lira::derived_subspace(l);
    emit(out, uce_args.as_json);
    return 0;
  }
  if (cmd_coh->parsed()) {
    check_degree(coh_degree);
    const auto l = load_algebra(coh_args.file, coh_args.builtin_name);
    lira::LeftLRModule m;
    if (!coh_module.empty()) {
      auto parsed = lira::io::parse_module(coh_module, l);
      if (!parsed.is_left())
        throw lira::io::ParseError("cohomology needs a left module");
      m = std::get<lira::LeftLRModule>(parsed.value);
    } else if (coh_trivial > 0) {
      m = lira::trivial_left_module(l, coh_trivial);
    } else {
      throw UsageError("cohomology needs --module or --trivial-module");
    }
    const lira::CochainComplex cc = lira::cochain_complex(l, m, coh_degree + 1);
    json dims = json::array();
    for (std::size_t n = 0; n <= coh_degree; ++n) dims.push_back(lira::cohomology(cc, n).dim);
    json out;
    out["degree"] = coh_degree;
    out["dims"] = dims;
    out["dim"] = dims.back();
    emit(out, coh_args.as_json);
    return 0;
  }
  if (cmd_hom->parsed()) {
    check_degree(hom_degree);
    const auto l = load_algebra(hom_args.file, hom_args.builtin_name);
    lira::RightLRModule m;
    if (!hom_module.empty()) {
      auto parsed = lira::io::parse_module(hom_module, l);
      if (parsed.is_left()) throw lira::io::ParseError("homology needs a right module");
      m = std::get<lira::RightLRModule>(parsed.value);
    } else if (hom_trivial > 0) {
      m = lira::trivial_right_module(l, hom_trivial);
    } else {
      throw UsageError("homology needs --module or --trivial-module");
    }
    const lira::ChainComplex cc = lira::chain_complex(l, m, hom_degree + 1);
    json dims = json::array();
    for (std::size_t n = 0; n <= hom_degree; ++n) dims.push_back(lira::homology_dim(cc, n));
    json out;
    out["degree"] = hom_degree;
    out["dims"] = dims;
    out["dim"] = dims.back();
    emit(out, hom_args.as_json);
    return 0;
  }
  if (cmd_cmp->parsed()) {
    check_degree(cmp_degree);
    lira::LieAlgebraOverK g;
    if (cmp_lie == "sl2")
      g = lira::sl2_lie();
    else if (cmp_lie == "heisenberg")
      g = lira::heisenberg_lie();
    else if (const auto n = lira::parse_abelian_name(cmp_lie))
      g = lira::abelian_lie(*n);
    else
      throw UsageError("unknown Lie algebra name: " + cmp_lie);
    lira::CommAlgebra a;
    if (cmp_base == "rationals")
      a = lira::CommAlgebra::rationals();
    else if (cmp_base == "dual_numbers")
      a = lira::CommAlgebra::dual_numbers();
    else
      throw UsageError("unknown base name: " + cmp_base);
    const std::vector<lira::Matrix> gamma(g.dim, lira::Matrix(a.dim, a.dim));
    const lira::LieRinehartAlgebra l = lira::transformation_algebra(g, a, gamma);
    const lira::LeftLRModule m = lira::trivial_left_module(l, cmp_trivial);
    const lira::CeComparison cmp = lira::rinehart_vs_ce(g, a, gamma, m, cmp_degree);
    json out;
    out["rinehart"] = cmp.rinehart_dims;
    out["chevalley_eilenberg"] = cmp.ce_dims;
    out["equal"] = cmp.equal;
    emit(out, cmp_json);
    return 0;
  }
  if (cmd_tensor->parsed()) {
    const auto l = load_algebra(tensor_args.file, tensor_args.builtin_name);
    json out;
    if (tensor_hat) {
      const lira::HatTensorResult hat = lira::hat_tensor(l);
      out["dim"] = hat.tensor.algebra.dim;
      out["mu_rank"] = lira::image(hat.tensor.mu.matrix).rank();
      out["nu_rank"] = lira::image(hat.tensor.nu.matrix).rank();
      out["central"] = hat.central;
      out["uce_iso"] = hat.iso;
    } else {
      if (tensor_with.empty() || tensor_actions.empty())
        throw UsageError("tensor needs a second algebra and --actions (or --hat)");
      const auto m = lira::io::resolve_algebra_ref(tensor_with, ".");
      const lira::ActionPair pair = lira::io::parse_actions(tensor_actions, l, m);
      const lira::TensorAlgebra t = lira::tensor_product(l, m, pair);
      out["dim"] = t.algebra.dim;
      out["mu_rank"] = lira::image(t.mu.matrix).rank();
      out["nu_rank"] = lira::image(t.nu.matrix).rank();
      out["central"] = lira::center(t.algebra).contains(lira::kernel(t.mu.matrix));
      out["uce_iso"] = nullptr;
    }
    emit(out, tensor_args.as_json);
    return 0;
  }
  if (cmd_la->parsed()) {
    const lira::LRMorphism f = lira::io::parse_morphism(cov_file_a);
    const lira::LRMorphism h = lira::io::parse_morphism(aut_file);
    if (!(h.source == f.target) || !(h.target == f.target))
      throw lira::io::ParseError("automorphism must act on the covering target");
    const lira::Covering cov = lira::make_covering(f);
    const lira::LiftResult res = lira::lift_automorphism(cov, h);
    json out;
    out["lifted"] = res.lifted;
    if (res.witness) out["witness"] = lira::io::vec_to_json(*res.witness);
    if (res.lift) out["lift_matrix"] = lira::io::matrix_to_json(*res.lift);
    emit(out, lift_aut_json);
    return 0;
  }
  if (cmd_ld->parsed()) {
    const lira::LRMorphism f = lira::io::parse_morphism(cov_file_d);
    const lira::Covering cov = lira::make_covering(f);
    const lira::DerivationPair d = lira::io::parse_derivation(der_file, f.target);
    const lira::LiftResult res = lira::lift_derivation(cov, d);
    json out;
    out["lifted"] = res.lifted;
    if (res.witness) out["witness"] = lira::io::vec_to_json(*res.witness);
    if (res.lift) out["lift_matrix"] = lira::io::matrix_to_json(*res.lift);
    emit(out, lift_der_json);
    return 0;
  }
  if (cmd_pb->parsed()) {
    const lira::LRMorphism c = lira::io::parse_morphism(pb_central);
    const lira::LRMorphism f = lira::io::parse_morphism(pb_f);
    if (!(c.target == f.target))
      throw lira::io::ParseError("pullback: the two morphisms must share a target");
    const lira::PullbackExtension pb = lira::pullback_extension(c, f);
    json out;
    out["total_dim"] = pb.total.dim;
    out["kernel_dim"] = pb.p_left.kernel_space.rank();
    out["central"] = pb.p_left.central();
    out["splits"] = pb.splits;
    emit(out, pb_json);
    return 0;
  }
  if (cmd_su->parsed()) {
    const lira::LRMorphism f = lira::io::parse_morphism(su_f);
    const lira::LRMorphism g = lira::io::parse_morphism(su_g);
    const lira::LRMorphism s = lira::io::parse_morphism(su_s);
    const lira::SplitUceReport rep = lira::split_uce_check(f, g, s);
    json out;
    out["hypotheses"] = rep.hypotheses;
    out["retraction"] = rep.retraction;
    out["sum_decomposition"] = rep.sum_decomposition;
    out["phi_part_is_kernel"] = rep.phi_part_is_kernel;
    out["phi_part_ideal"] = rep.phi_part_ideal;
    out["kernel_direct_sum"] = rep.kernel_direct_sum;
    out["direct_product_case"] = rep.direct_product_case;
    out["product_iso"] = rep.product_iso;
    out["ok"] = rep.ok();
    emit(out, su_json);
    return rep.ok() ? 0 : 1;
  }
  throw UsageError("no command given");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const lira::UnknownBuiltin& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const lira::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
