#include "wedge/commands.hpp"

#include <CLI11.hpp>
#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "wedge/compound.hpp"
#include "wedge/error.hpp"
#include "wedge/gk.hpp"
#include "wedge/io.hpp"
#include "wedge/kernel.hpp"
#include "wedge/positivity.hpp"
#include "wedge/random.hpp"
#include "wedge/report_json.hpp"

namespace wedge::cli {

namespace {

struct Common {
  std::string format = "json";
  std::string out_path;
  double tol = kDefaultTol;
};

void add_output_flags(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--out", c.out_path, "Write the result to this file instead of stdout");
}

void emit(const Common& c, const std::string& content, std::ostream& out) {
  if (c.out_path.empty())
    out << content;
  else
    io::write_file(c.out_path, content);
}

std::string render(const Common& c, const Json& j) { return c.format == "text" ? render_text(j) : render_json(j); }

DenseMatrix general_matrix(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compound matrices, total positivity and exterior-square spectra"};
  app.require_subcommand(1);

  Common common;
  std::string input;
  std::function<int()> action;

  // analyze
  AnalyzeOptions analyze_opts;
  auto* analyze_cmd = app.add_subcommand("analyze", "Classify the spectral circle and locate the second eigenvalue");
  analyze_cmd->add_option("input", input, "Matrix file (CSV or JSON {\"data\": [[...]]})")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--tol", common.tol, "Solver tolerance")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--circle-tol", analyze_opts.circle_tol, "Relative width of the spectral circle")->check(CLI::PositiveNumber);
  add_output_flags(analyze_cmd, common);
  analyze_cmd->callback([&] {
    action = [&] {
      const DenseMatrix m = io::parse_matrix(io::read_file(input));
      analyze_opts.tol = common.tol;
      analyze_opts.hypotheses.tol = common.tol;
      emit(common, render(common, to_json(analyze(m, analyze_opts))), out);
      return kSuccess;
    };
  });

  // compound
  std::size_t order = 2;
  bool force = false;
  auto* compound_cmd = app.add_subcommand("compound", "Print the compound matrix of a given order as CSV");
  compound_cmd->add_option("input", input, "Matrix file")->required()->check(CLI::ExistingFile);
  compound_cmd->add_option("--order", order, "Minor order j")->required();
  compound_cmd->add_flag("--force", force, "Ignore the output size cap");
  compound_cmd->add_option("--out", common.out_path, "Write CSV to this file");
  compound_cmd->callback([&] {
    action = [&] {
      const DenseMatrix m = io::parse_matrix(io::read_file(input));
      emit(common, io::to_csv(compound_matrix(m, order, SizeCap{.force = force})), out);
      return kSuccess;
    };
  });

  // tn-check
  TnOptions tn_opts;
  bool sample = false;
  auto* tn_cmd = app.add_subcommand("tn-check", "Certify total nonnegativity up to an order");
  tn_cmd->add_option("input", input, "Matrix file")->required()->check(CLI::ExistingFile);
  tn_cmd->add_option("--order", order, "Highest minor order k")->required();
  tn_cmd->add_option("--tol", common.tol, "Relative tolerance")->check(CLI::PositiveNumber);
  tn_cmd->add_flag("--sample", sample, "Sample minors instead of refusing when over budget");
  tn_cmd->add_option("--seed", tn_opts.seed, "Seed for sampling mode");
  add_output_flags(tn_cmd, common);
  tn_cmd->callback([&] {
    action = [&] {
      const DenseMatrix m = io::parse_matrix(io::read_file(input));
      tn_opts.tol = common.tol;
      tn_opts.allow_sampling = sample;
      const TNCertificate cert = is_totally_nonnegative(m, order, tn_opts);
      emit(common, render(common, to_json(cert)), out);
      return cert.verdict ? kSuccess : kVerdictFailure;
    };
  });

  // kernel
  std::string kernel_name, kernel_file, rule_name = "midpoint";
  std::optional<double> kernel_param;
  std::size_t grid = 0, trials = 500;
  std::uint64_t seed = 0;
  auto* kernel_cmd = app.add_subcommand("kernel", "Discretize an integral kernel and analyze the grid operator");
  auto* name_opt = kernel_cmd->add_option("--name", kernel_name, "Builtin kernel")->check(CLI::IsMember(KernelSpec::builtin_names()));
  auto* file_opt = kernel_cmd->add_option("--file", kernel_file, "Tabulated kernel (CSV or JSON)")->check(CLI::ExistingFile);
  name_opt->excludes(file_opt);
  kernel_cmd->add_option("--param", kernel_param, "Kernel parameter (gaussian sigma, cosine omega)");
  kernel_cmd->add_option("--grid", grid, "Grid size (default 200; the table size for --file)");
  kernel_cmd->add_option("--rule", rule_name, "Quadrature rule")->check(CLI::IsMember({"midpoint", "trapezoid"}));
  kernel_cmd->add_option("--trials", trials, "Sampled 2-minors for the kernel TN check");
  kernel_cmd->add_option("--seed", seed, "Seed for the kernel TN check");
  kernel_cmd->add_option("--tol", common.tol, "Tolerance")->check(CLI::PositiveNumber);
  add_output_flags(kernel_cmd, common);
  kernel_cmd->callback([&] {
    action = [&] {
      if (kernel_name.empty() && kernel_file.empty()) throw ValidationError("kernel: give --name or --file");
      const KernelSpec spec =
          kernel_file.empty() ? KernelSpec::builtin(kernel_name, kernel_param) : io::parse_kernel(io::read_file(kernel_file));
      const std::size_t n = grid != 0 ? grid : (spec.is_tabulated() ? spec.nodes().size() : 200);
      const QuadratureRule rule = rule_name == "trapezoid" ? QuadratureRule::trapezoid : QuadratureRule::midpoint;
      const KernelGrid g = discretize(spec, n, rule);
      const TNCertificate cert = kernel_tn_check(spec, n, 2, trials, seed, common.tol);
      AnalyzeOptions opts;
      opts.tol = common.tol;
      opts.hypotheses.tol = common.tol;
      opts.hypotheses.seed = seed;
      Json j;
      j["kernel"] = Json{{"name", spec.name()},
                         {"parameter", spec.parameter() ? Json(*spec.parameter()) : Json(nullptr)},
                         {"grid", n},
                         {"rule", spec.is_tabulated() ? "cells" : rule_name}};
      j["kernel_tn_certificate"] = to_json(cert);
      j["report"] = to_json(analyze(g.discretized, opts));
      emit(common, render(common, j), out);
      return kSuccess;
    };
  });

  // generate
  std::size_t gen_n = 0, factors = 0;
  bool oscillatory = false;
  auto* gen_cmd = app.add_subcommand("generate", "Write a random totally nonnegative or oscillatory matrix as CSV");
  gen_cmd->add_option("--n", gen_n, "Dimension")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", seed, "Seed")->required();
  gen_cmd->add_option("--factors", factors, "Number of bidiagonal factors (default 3n)");
  gen_cmd->add_flag("--oscillatory", oscillatory, "Generate an oscillatory matrix");
  gen_cmd->add_option("--out", common.out_path, "Write CSV to this file");
  gen_cmd->callback([&] {
    action = [&] {
      const DenseMatrix m = oscillatory ? random_oscillatory(gen_n, seed) : random_tn(gen_n, seed, factors ? factors : 3 * gen_n);
      emit(common, io::to_csv(m), out);
      return kSuccess;
    };
  });

  // verify
  int theorem = 2;
  std::size_t verify_n = 0;
  double verify_tol = 1e-8;
  auto* verify_cmd = app.add_subcommand("verify", "Check the tensor/exterior-square spectrum identities on random matrices");
  verify_cmd->add_option("--theorem", theorem, "1: tensor square, 2: exterior square")->check(CLI::IsMember({1, 2}));
  verify_cmd->add_option("--n", verify_n, "Dimension")->required();
  verify_cmd->add_option("--trials", trials, "Number of matrices")->required();
  verify_cmd->add_option("--seed", seed, "Seed")->required();
  verify_cmd->add_option("--tol", verify_tol, "Relative matching tolerance")->check(CLI::PositiveNumber);
  add_output_flags(verify_cmd, common);
  verify_cmd->callback([&] {
    action = [&] {
      if (trials == 0) throw ValidationError("verify: --trials must be at least 1");
      if (verify_n < (theorem == 2 ? 2u : 1u)) throw ValidationError("verify: --n too small");
      // Fail fast on the size cap before any work.
      check_size_cap(theorem == 1 ? verify_n * verify_n : verify_n * (verify_n - 1) / 2, SizeCap{}, "verify");
      Json failures = Json::array();
      double worst = 0.0;
      std::size_t matched = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, t);
        const bool tn = t % 2 == 0;
        const DenseMatrix m = tn ? random_tn(verify_n, s, 3 * verify_n) : general_matrix(verify_n, s);
        const VerificationReport r = theorem == 1 ? verify_theorem1(m, verify_tol) : verify_theorem2(m, verify_tol);
        worst = std::max(worst, r.max_residual);
        if (r.matched) {
          ++matched;
        } else {
          Json f;
          f["trial"] = t;
          f["kind"] = tn ? "random_tn" : "general";
          f["matrix_csv"] = io::to_csv(m);
          f["report"] = to_json(r);
          failures.push_back(std::move(f));
        }
      }
      Json j;
      j["theorem"] = theorem;
      j["n"] = verify_n;
      j["trials"] = trials;
      j["seed"] = seed;
      j["tol"] = verify_tol;
      j["matched"] = matched;
      j["all_matched"] = matched == trials;
      j["worst_residual"] = worst;
      j["counterexamples"] = std::move(failures);
      emit(common, render(common, j), out);
      return matched == trials ? kSuccess : kVerdictFailure;
    };
  });

  std::vector<std::string> argv_store{"wedge"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return e.get_exit_code() == 0 ? kSuccess : kInputError;
  }

  try {
    return action ? action() : kInputError;
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceError& e) {
    err << "size limit: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const DegeneratePerronError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace wedge::cli
