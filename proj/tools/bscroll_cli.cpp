// bscroll: B-scrolls in L^3, dual timelike minimal surfaces in Nil_3 and
// their singularities.
//
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 numeric failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bscroll/commands.hpp"
#include "bscroll/errors.hpp"

namespace {

using bscroll::RunConfig;

// Values such as "-1:1" or "-s^2" would otherwise be taken for flags.
std::vector<std::string> join_values(int argc, char** argv) {
  static const std::set<std::string> valued{"--h", "--H", "--kappa1", "--kappa2", "--s-range", "--t-range",
                                            "--s", "--boost", "--rot", "--init-frame", "--tol-root",
                                            "--tol-cluster", "--fd-step", "--fd-tol"};
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (valued.count(a) && i + 1 < argc) {
      out.push_back(a + "=" + argv[++i]);
    } else {
      out.push_back(a);
    }
  }
  return out;
}

void print_error(const std::exception& e, const RunConfig& cfg) {
  std::cerr << "error: " << e.what() << "\n";
  std::size_t offset = std::string::npos;
  if (const auto* se = dynamic_cast<const bscroll::SyntaxError*>(&e)) offset = se->offset();
  if (const auto* uf = dynamic_cast<const bscroll::UnknownFunction*>(&e)) offset = uf->offset();
  if (const auto* de = dynamic_cast<const bscroll::DomainError*>(&e); de && de->has_offset()) offset = de->offset();
  if (offset != std::string::npos) {
    std::cerr << "  " << cfg.generator << "\n  " << std::string(offset, ' ') << "^\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"B-scrolls in Lorentz-Minkowski space, dual timelike minimal surfaces in Nil_3 and their singularities", "bscroll"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string s_range, t_range, grid, target = "both", kappa2, init_frame;
  std::optional<double> fd_tol, s_point;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--h", cfg.generator, "generator h(s)")->capture_default_str();
    sub->add_option("--H", cfg.H, "mean curvature H (non-zero)")->capture_default_str();
    sub->add_option("--s-range", s_range, "s range lo:hi (default -1:1)");
    sub->add_option("--grid", grid, "grid NSxNT (default 64x16)");
    sub->add_option("--tol-root", cfg.tol.root, "root tolerance")->capture_default_str();
    sub->add_option("--tol-cluster", cfg.tol.cluster, "swallowtail clustering tolerance")->capture_default_str();
    sub->add_option("--out", cfg.out, "output path prefix");
  };

  CLI::App* surface = app.add_subcommand("surface", "write OBJ meshes of f_L and of the Nil_3 surface");
  common(surface);
  surface->add_option("--t-range", t_range, "t range lo:hi (default -2:2)");
  surface->add_option("--target", target, "l3, nil3 or both")->capture_default_str();

  CLI::App* singular = app.add_subcommand("singular", "locate and classify singular points");
  common(singular);

  CLI::App* verify = app.add_subcommand("verify", "run the numerical verification suite");
  common(verify);
  verify->add_option("--t-range", t_range, "t range lo:hi (default -2:2)");
  verify->add_option("--fd-step", cfg.fd_step, "finite-difference step for the box operator")->capture_default_str();
  verify->add_option("--fd-tol", fd_tol, "override the finite-difference check tolerances");
  verify->add_option("--report", cfg.report, "write the JSON report here instead of stdout");

  CLI::App* frame = app.add_subcommand("frame", "sample null frames from h or from prescribed curvatures");
  common(frame);
  frame->add_option("--kappa1", cfg.kappa1, "k1(s) for the Frenet-Serret flow")->capture_default_str();
  frame->add_option("--kappa2", kappa2, "k2(s); switches to the Frenet-Serret flow");
  frame->add_option("--init-frame", init_frame, "initial A,B,C as 9 comma-separated numbers");
  frame->add_option("--s", s_point, "parameter of the initial frame");

  CLI::App* family = app.add_subcommand("family", "O(2,1) family: invariance report and NotCE search");
  common(family);
  family->add_option("--boost", cfg.boost, "boost rapidity in the (x1,x2)-plane")->capture_default_str();
  family->add_option("--rot", cfg.rot, "rotation angle in the (x2,x3)-plane")->capture_default_str();
  family->add_flag("--find-notce", cfg.find_notce, "search for O making the point at --s non-cuspidal-edge");
  family->add_option("--s", s_point, "parameter for --find-notce");

  std::vector<std::string> args = join_values(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!s_range.empty()) cfg.s_range = bscroll::parse_range(s_range);
    if (!t_range.empty()) cfg.t_range = bscroll::parse_range(t_range);
    if (!grid.empty()) std::tie(cfg.ns, cfg.nt) = bscroll::parse_grid(grid);
    cfg.target = bscroll::parse_target(target);
    if (!kappa2.empty()) cfg.kappa2 = kappa2;
    if (!init_frame.empty()) cfg.init_frame = bscroll::parse_frame9(init_frame);
    cfg.fd_tol = fd_tol;
    cfg.s_point = s_point;

    nlohmann::json out;
    int code = 0;
    if (surface->parsed()) {
      out = bscroll::cmd_surface(cfg);
    } else if (singular->parsed()) {
      out = bscroll::cmd_singular(cfg);
    } else if (verify->parsed()) {
      out = bscroll::cmd_verify(cfg);
      code = out.at("pass").get<bool>() ? 0 : 1;
    } else if (frame->parsed()) {
      out = bscroll::cmd_frame(cfg);
    } else {
      out = bscroll::cmd_family(cfg);
    }
    if (verify->parsed() && !cfg.report.empty()) {
      std::ofstream os(cfg.report);
      if (!os) throw bscroll::InputError("cannot open '" + cfg.report + "' for writing");
      os << out.dump(2) << "\n";
    } else {
      std::cout << out.dump(2) << "\n";
    }
    return code;
  } catch (const bscroll::InputError& e) {
    print_error(e, cfg);
    return 2;
  } catch (const bscroll::NumericError& e) {
    print_error(e, cfg);
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
