#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oedg/config.hpp"
#include "oedg/convergence.hpp"
#include "oedg/invariance.hpp"
#include "oedg/outputs.hpp"
#include "oedg/run.hpp"
#include "oedg/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitThreshold = 4;

int do_run(const std::string& config_path, const std::string& out_override) {
  oedg::RunConfig cfg = oedg::load_run_config(config_path);
  if (!out_override.empty()) cfg.out_dir = out_override;
  return oedg::run_to_files(cfg);
}

int do_list_problems() {
  for (const auto& info : oedg::problem_registry())
    std::printf("%-24s %dD  %s\n", info.id.c_str(), info.dim, info.summary.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oscillation-eliminating discontinuous Galerkin solver"};
  app.set_version_flag("--version", std::string(oedg::kVersion) + " (" + oedg::kBuildId + ")");
  app.require_subcommand(1);

  std::string config_path, out_override, csv_path;
  std::vector<int> levels;
  std::string mode_name = "standard";
  double assert_rate = -1.0;

  auto* run_cmd = app.add_subcommand("run", "run one problem and write CSV outputs");
  run_cmd->add_option("--config", config_path, "config file")->required();
  run_cmd->add_option("--out", out_override, "output directory (overrides config)");

  auto* conv_cmd = app.add_subcommand("convergence", "mesh-refinement error study");
  conv_cmd->add_option("--config", config_path, "config file")->required();
  conv_cmd->add_option("--levels", levels, "cell counts, e.g. 64,128,256")
      ->required()
      ->delimiter(',');
  conv_cmd->add_option("--mode", mode_name, "standard | superconvergence")
      ->check(CLI::IsMember({"standard", "superconvergence"}));
  conv_cmd->add_option("--assert", assert_rate,
                       "fail (exit 4) when the finest-pair L1 rate is below this");
  conv_cmd->add_option("--csv", csv_path, "also write the table to this CSV file");

  auto* list_cmd = app.add_subcommand("list-problems", "print the problem registry");

  std::string inv_problem;
  std::vector<double> inv_lambdas, inv_betas;
  double inv_tol = -1.0;
  auto* inv_cmd = app.add_subcommand("check-invariance",
                                     "scale/evolution/unit invariance checks");
  inv_cmd->add_option("--problem", inv_problem, "problem id")->required();
  inv_cmd->add_option("--lambda", inv_lambdas, "data scalings, e.g. 0.01,1,100")
      ->delimiter(',');
  inv_cmd->add_option("--beta", inv_betas, "flux scalings, e.g. 0.01,1,100")->delimiter(',');
  inv_cmd->add_option("--tol", inv_tol, "override the pass tolerance");

  try {
    app.parse(argc, argv);

    if (run_cmd->parsed()) return do_run(config_path, out_override);

    if (conv_cmd->parsed()) {
      const oedg::RunConfig cfg = oedg::load_run_config(config_path);
      const oedg::StudyMode mode = mode_name == "superconvergence"
                                       ? oedg::StudyMode::Superconvergence
                                       : oedg::StudyMode::Standard;
      const oedg::ConvergenceTable table =
          oedg::convergence_study(cfg.problem, cfg.params, levels, mode);
      oedg::print_convergence_table(table);
      if (!csv_path.empty()) oedg::write_convergence_csv(csv_path, table);
      if (assert_rate > 0.0) {
        const double rate = oedg::finest_pair_rate(table, 0);
        if (!(rate >= assert_rate)) {
          std::fprintf(stderr, "finest-pair L1 rate %.3f below required %.3f\n", rate,
                       assert_rate);
          return kExitThreshold;
        }
      }
      return kExitOk;
    }

    if (list_cmd->parsed()) return do_list_problems();

    if (inv_cmd->parsed()) {
      std::vector<oedg::InvarianceStudy> studies;
      if (inv_problem == "lwr-freeway") {
        studies.push_back(oedg::lwr_three_unit_study({}));
      } else {
        if (inv_lambdas.empty() && inv_betas.empty()) inv_lambdas = {0.01, 1.0, 100.0};
        if (!inv_lambdas.empty())
          studies.push_back(oedg::scale_invariance_study(inv_problem, {}, inv_lambdas));
        if (!inv_betas.empty())
          studies.push_back(oedg::evolution_invariance_study(inv_problem, {}, inv_betas));
      }
      bool ok = true;
      for (const auto& study : studies) {
        oedg::print_invariance_study(study);
        const double tol = inv_tol > 0.0 ? inv_tol : (study.kind == "units" ? 1e-9 : 1e-10);
        if (study.worst() > tol) {
          std::fprintf(stderr, "%s invariance deviation %.3e exceeds %.1e\n",
                       study.kind.c_str(), study.worst(), tol);
          ok = false;
        }
      }
      return ok ? kExitOk : kExitThreshold;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const oedg::SolverAbort& e) {
    std::fprintf(stderr, "solver abort: %s\n", e.what());
    try {
      oedg::write_file_atomic((out_override.empty() ? std::string("out") : out_override) +
                                  "/diagnostics.txt",
                              std::string("solver abort\n") + e.what() + "\n");
    } catch (...) {
    }
    return kExitSolver;
  } catch (const oedg::AdmissibilityError& e) {
    std::fprintf(stderr, "solver abort: %s\n", e.what());
    return kExitSolver;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitOk;
}
