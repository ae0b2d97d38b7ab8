#include "bscroll/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "bscroll/errors.hpp"
#include "bscroll/expr.hpp"
#include "bscroll/integrator.hpp"
#include "bscroll/null_frame.hpp"
#include "bscroll/surface.hpp"

namespace bscroll {

using nlohmann::json;

namespace {

double parse_number(std::string_view text, const char* what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw InputError(std::string("invalid number '") + std::string(text) + "' in " + what);
  }
  return v;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open '" + path + "' for writing");
  os << content;
  if (!os) throw InputError("failed writing '" + path + "'");
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1.0);
  return v;
}

json range_json(const std::pair<double, double>& r) { return json::array({r.first, r.second}); }

json frame_json(const NullFrame& f) {
  return {{"s", f.s},
          {"A", to_json(f.a())},
          {"B", to_json(f.b())},
          {"C", to_json(f.c())},
          {"kappa1", f.kappa1.value()},
          {"kappa2", f.kappa2.value()}};
}

json matrix_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2)}));
  return rows;
}

std::string obj_mesh(const std::vector<Vec3L>& verts, int ns, int nt) {
  std::string out;
  out.reserve(verts.size() * 64);
  for (const Vec3L& v : verts) out += "v " + g17(v.x1) + " " + g17(v.x2) + " " + g17(v.x3) + "\n";
  for (int i = 0; i + 1 < ns; ++i) {
    for (int j = 0; j + 1 < nt; ++j) {
      const int a = i * nt + j + 1;
      out += "f " + std::to_string(a) + " " + std::to_string(a + nt) + " " + std::to_string(a + nt + 1) + " " +
             std::to_string(a + 1) + "\n";
    }
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (!(H != 0.0) || !std::isfinite(H)) throw InputError("--H must be a non-zero number");
  if (!(s_range.first < s_range.second)) throw InputError("--s-range needs lo < hi");
  if (!(t_range.first < t_range.second)) throw InputError("--t-range needs lo < hi");
  if (ns < 2 || nt < 2) throw InputError("--grid needs NS, NT >= 2");
  if (!(tol.root > 0.0) || !(tol.cluster > 0.0)) throw InputError("tolerances must be positive");
  if (!(fd_step >= 1e-4 && fd_step <= 1e-2)) throw InputError("--fd-step must lie in [1e-4, 1e-2]");
  if (fd_tol && !(*fd_tol > 0.0)) throw InputError("--fd-tol must be positive");
  integrator.validate();
}

double RunConfig::s0() const { return (s_range.first <= 0.0 && 0.0 <= s_range.second) ? 0.0 : s_range.first; }

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw InputError("range '" + text + "' must have the form lo:hi");
  const std::string_view v(text);
  const double lo = parse_number(v.substr(0, colon), "range");
  const double hi = parse_number(v.substr(colon + 1), "range");
  if (!(lo < hi)) throw InputError("range '" + text + "' needs lo < hi");
  return {lo, hi};
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw InputError("grid '" + text + "' must have the form NSxNT");
  int a = 0, b = 0;
  const auto r1 = std::from_chars(text.data(), text.data() + x, a);
  const auto r2 = std::from_chars(text.data() + x + 1, text.data() + text.size(), b);
  if (r1.ec != std::errc() || r1.ptr != text.data() + x || r2.ec != std::errc() ||
      r2.ptr != text.data() + text.size()) {
    throw InputError("grid '" + text + "' must have the form NSxNT");
  }
  if (a < 2 || b < 2) throw InputError("grid needs NS, NT >= 2");
  return {a, b};
}

Target parse_target(const std::string& text) {
  if (text == "l3") return Target::L3;
  if (text == "nil3") return Target::Nil3;
  if (text == "both") return Target::Both;
  throw InputError("--target must be l3, nil3 or both");
}

std::array<double, 9> parse_frame9(const std::string& text) {
  std::array<double, 9> out{};
  std::size_t start = 0;
  for (std::size_t k = 0; k < 9; ++k) {
    const auto comma = text.find(',', start);
    if ((comma == std::string::npos) != (k == 8)) throw InputError("--init-frame needs 9 comma-separated numbers");
    out[k] = parse_number(std::string_view(text).substr(start, comma == std::string::npos ? std::string::npos
                                                                                         : comma - start),
                          "--init-frame");
    start = comma + 1;
  }
  return out;
}

json to_json(const Vec3L& v) { return json::array({v.x1, v.x2, v.x3}); }

json to_json(const SingularPoint& p) {
  const auto& d = p.diagnostics;
  json j = {{"s", p.s},
            {"t", p.t ? json(*p.t) : json(nullptr)},
            {"kind", kind_name(p.kind)},
            {"diagnostics",
             {{"S_h", d.S_h},
              {"S_h_prime", d.S_h_prime},
              {"kappa2", d.kappa2},
              {"kappa2_prime", d.kappa2_prime},
              {"cL1", to_json(d.cL1)},
              {"cL2", to_json(d.cL2)},
              {"notce", {{"r1", number_or_null(d.notce.r1)}, {"r2", number_or_null(d.notce.r2)}}}}}};
  return j;
}

std::string curve_csv(const SingularReport& rep) {
  std::string out = "s,t\r\n";
  for (const CurveSample& c : rep.curve) out += g17(c.s) + "," + (c.t ? g17(*c.t) : std::string()) + "\r\n";
  return out;
}

json cmd_surface(const RunConfig& cfg) {
  cfg.validate();
  const double H = cfg.H;
  const FrameSource frames = generator_frames(parse(cfg.generator), H);
  const CurvePath path = integrate_curve(frames, cfg.s0(), cfg.s_range.first, cfg.s_range.second, cfg.integrator);
  const auto ss = linspace(cfg.s_range.first, cfg.s_range.second, cfg.ns);
  const auto ts = linspace(cfg.t_range.first, cfg.t_range.second, cfg.nt);

  std::vector<Vec3L> l3, nil3;
  for (double s : ss) {
    const NullFrame f = frames(s);
    for (double t : ts) {
      l3.push_back(bscroll_point(f, path, t));
      nil3.push_back(nil3_point(f, path, t));
    }
  }
  const std::string prefix = cfg.out.empty() ? "bscroll" : cfg.out;
  json files = json::array();
  if (cfg.target != Target::Nil3) {
    write_file(prefix + "_l3.obj", obj_mesh(l3, cfg.ns, cfg.nt));
    files.push_back(prefix + "_l3.obj");
  }
  if (cfg.target != Target::L3) {
    write_file(prefix + "_nil3.obj", obj_mesh(nil3, cfg.ns, cfg.nt));
    files.push_back(prefix + "_nil3.obj");
  }
  return {{"generator", cfg.generator},
          {"H", H},
          {"s_range", range_json(cfg.s_range)},
          {"t_range", range_json(cfg.t_range)},
          {"vertices", cfg.ns * cfg.nt},
          {"faces", (cfg.ns - 1) * (cfg.nt - 1)},
          {"files", files}};
}

json cmd_singular(const RunConfig& cfg) {
  cfg.validate();
  const FrameSource frames = generator_frames(parse(cfg.generator), cfg.H);
  const SingularReport rep =
      scan_singularities(frames, cfg.s_range.first, cfg.s_range.second, std::max(cfg.ns, 16), cfg.tol);
  json points = json::array();
  for (const SingularPoint& p : rep.points) points.push_back(to_json(p));
  json j = {{"generator", cfg.generator},
            {"H", cfg.H},
            {"s_range", range_json(cfg.s_range)},
            {"tolerances", {{"root", cfg.tol.root}, {"cluster", cfg.tol.cluster}}},
            {"points", points},
            {"warnings", rep.warnings},
            {"curve_csv_path", nullptr}};
  if (!cfg.out.empty()) {
    const std::string csv = cfg.out + "_curve.csv";
    write_file(csv, curve_csv(rep));
    j["curve_csv_path"] = csv;
    write_file(cfg.out + ".json", j.dump(2) + "\n");
  }
  return j;
}

json cmd_frame(const RunConfig& cfg) {
  cfg.validate();
  const auto ss = linspace(cfg.s_range.first, cfg.s_range.second, cfg.ns);
  json frames_json = json::array();
  if (!cfg.kappa2) {
    const FrameSource frames = generator_frames(parse(cfg.generator), cfg.H);
    double worst = 0.0;
    for (double s : ss) {
      const NullFrame f = frames(s);
      worst = std::max(worst, validate_frame(f).max());
      frames_json.push_back(frame_json(f));
    }
    return {{"mode", "generator"},
            {"generator", cfg.generator},
            {"H", cfg.H},
            {"frames", frames_json},
            {"max_residual", worst}};
  }

  const Expr k1 = parse(cfg.kappa1), k2 = parse(*cfg.kappa2);
  const double s_init = cfg.s_point.value_or(cfg.s0());
  NullFrame init;
  if (cfg.init_frame) {
    const auto& v = *cfg.init_frame;
    init.s = s_init;
    init.H = cfg.H;
    init.A = constant_jets({v[0], v[1], v[2]}, s_init, 0);
    init.B = constant_jets({v[3], v[4], v[5]}, s_init, 0);
    init.C = constant_jets({v[6], v[7], v[8]}, s_init, 0);
    init.kappa1 = k1.eval_jet(s_init, 0);
    init.kappa2 = k2.eval_jet(s_init, 0);
  } else {
    init = frame_from_h(parse(cfg.generator), cfg.H, s_init);
  }
  const FlowResult flow =
      frame_flow_from_curvatures(k1, k2, cfg.H, init, cfg.s_range.first, cfg.s_range.second, cfg.ns, cfg.integrator);
  for (const NullFrame& f : flow.frames) frames_json.push_back(frame_json(f));
  return {{"mode", "flow"},
          {"kappa1", cfg.kappa1},
          {"kappa2", *cfg.kappa2},
          {"H", cfg.H},
          {"s_init", s_init},
          {"frames", frames_json},
          {"max_invariant_drift", flow.max_invariant_drift},
          {"kappa2_recovery", number_or_null(flow.kappa2_recovery)}};
}

json cmd_family(const RunConfig& cfg) {
  cfg.validate();
  const FrameSource frames = generator_frames(parse(cfg.generator), cfg.H);
  LorentzParams lp;
  lp.phi = cfg.rot;
  lp.chi = cfg.boost;
  const LorentzTransform O = LorentzTransform::from_params(lp);
  json j = {{"generator", cfg.generator}, {"H", cfg.H}, {"s_range", range_json(cfg.s_range)},
            {"O", matrix_json(O.matrix())}};

  const InvarianceReport inv = invariance_check(frames, O, cfg.s_range.first, cfg.s_range.second,
                                                std::max(cfg.ns, 16), 50, cfg.tol);
  auto entries = [](const std::vector<InvarianceEntry>& es) {
    json a = json::array();
    for (const auto& e : es) {
      a.push_back({{"s", e.s},
                   {"kind", kind_name(e.kind)},
                   {"kind_O", kind_name(e.kind_O)},
                   {"front_match", e.front_match},
                   {"ccr_match", e.ccr_match}});
    }
    return a;
  };
  j["invariance"] = {{"points", entries(inv.points)},
                     {"samples", entries(inv.samples)},
                     {"front_preserved", inv.front_preserved},
                     {"ccr_preserved", inv.ccr_preserved},
                     {"kind_differences", inv.kind_differences}};

  if (cfg.find_notce) {
    const double s = cfg.s_point.value_or(cfg.s0());
    const NullFrame f = frames(s);
    const NotCEResult r = find_notce_transform(f);
    const SingularPoint p = classify_point(transform_frame(r.O, f), cfg.tol);
    j["notce"] = {{"s", s},
                  {"O", matrix_json(r.O.matrix())},
                  {"r1", r.residuals.r1},
                  {"r2", r.residuals.r2},
                  {"identity", r.identity},
                  {"kind", kind_name(p.kind)}};
  }
  return j;
}

}  // namespace bscroll
