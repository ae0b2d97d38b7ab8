#pragma once

// Subcommands of the bscroll CLI. Each returns a JSON document; errors are
// thrown as InputError (exit 2) or NumericError (exit 3).

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "bscroll/dopri.hpp"
#include "bscroll/singularity.hpp"
#include "json.hpp"

namespace bscroll {

enum class Target { L3, Nil3, Both };

struct RunConfig {
  std::string generator = "tanh(s)";
  double H = 1.0;
  std::pair<double, double> s_range{-1.0, 1.0};
  std::pair<double, double> t_range{-2.0, 2.0};
  int ns = 64, nt = 16;
  Target target = Target::Both;
  Tolerances tol;
  double fd_step = 1e-3;
  std::optional<double> fd_tol;  // overrides the finite-difference check tolerances
  IntegratorConfig integrator;
  std::string out;     // path prefix for OBJ/CSV/JSON outputs
  std::string report;  // verify: report path (stdout when empty)

  std::string kappa1 = "0";
  std::optional<std::string> kappa2;
  std::optional<std::array<double, 9>> init_frame;  // A, B, C
  double boost = 0.0;
  double rot = 0.0;
  bool find_notce = false;
  std::optional<double> s_point;

  void validate() const;
  /// 0 when it lies in the s-range, else the lower end.
  double s0() const;
};

std::pair<double, double> parse_range(const std::string& text);
std::pair<int, int> parse_grid(const std::string& text);
Target parse_target(const std::string& text);
std::array<double, 9> parse_frame9(const std::string& text);

/// Writes <out>_l3.obj and/or <out>_nil3.obj.
nlohmann::json cmd_surface(const RunConfig& cfg);
/// Writes <out>_curve.csv and <out>.json when out is set.
nlohmann::json cmd_singular(const RunConfig& cfg);
/// "pass" is false when any check fails.
nlohmann::json cmd_verify(const RunConfig& cfg);
nlohmann::json cmd_frame(const RunConfig& cfg);
nlohmann::json cmd_family(const RunConfig& cfg);

nlohmann::json to_json(const Vec3L& v);
nlohmann::json to_json(const SingularPoint& p);

/// CSV of the sampled singular curve: header "s,t", 17 significant digits,
/// blank t where the curve is unbounded.
std::string curve_csv(const SingularReport& rep);

}  // namespace bscroll
