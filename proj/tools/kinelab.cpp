// kinelab - classification, boosts, subgroup exponentials, contractions,
// symmetries, fibration sampling, holonomy experiments, and an invariant
// suite for the two-parameter family of 2d kinematical geometries.
//
// Exit codes: 0 success, 1 verification failure, 2 domain or usage error.
// Scalar results go to stdout as JSON, point clouds as CSV; diagnostics go
// to stderr.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kinelab/kinelab.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace kinelab;

// locale-independent, 17 significant digits
std::string fmt17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

struct ParamSelection {
  std::string group;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  std::string format;

  void add_options(CLI::App* cmd, const char* default_format) {
    auto* g = cmd->add_option("--group", group, "group preset name (dS adS M N+ N- G H Eu El)");
    auto* k1 = cmd->add_option("--kappa1", kappa1, "spacetime curvature kappa1");
    auto* k2 = cmd->add_option("--kappa2", kappa2, "minus inverse squared light speed kappa2");
    g->excludes(k1);
    g->excludes(k2);
    format = default_format;
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({std::string(default_format)}));
  }

  CurvatureParams resolve(const CLI::App* cmd) const {
    const bool has_k1 = cmd->count("--kappa1") > 0;
    const bool has_k2 = cmd->count("--kappa2") > 0;
    if (!group.empty()) {
      const auto p = preset_params(group);
      if (!p) throw CLI::ValidationError("--group", "unknown group preset '" + group + "'");
      return *p;
    }
    if (!has_k1 || !has_k2)
      throw CLI::ValidationError("parameters",
                                 "specify --group or both --kappa1 and --kappa2");
    return CurvatureParams{kappa1, kappa2};
  }
};

json constants_json(const StructureConstants& sc) {
  const auto z = [](double v) { return v == 0.0 ? 0.0 : v; };  // drop negative zero
  return json{{"p", z(sc.p)}, {"h", z(sc.h)}, {"k", z(sc.k)}};
}

json params_json(const CurvatureParams& p) {
  return json{{"kappa1", p.kappa1.value}, {"kappa2", p.kappa2.value}};
}

std::string group_of_constants(const StructureConstants& sc) {
  if (!is_normalized(sc)) return "unrecognized";
  return std::string(to_string(classify_sc(sc)));
}

std::uint64_t resolve_seed(const CLI::App* cmd, std::uint64_t cli_seed) {
  if (cmd->count("--seed") > 0) return cli_seed;
  if (const char* env = std::getenv("KINELAB_SEED")) {
    std::uint64_t v = 0;
    const std::string s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size()) return v;
    std::cerr << "kinelab: ignoring malformed KINELAB_SEED='" << s << "'\n";
  }
  return cli_seed;
}

int cmd_classify(const ParamSelection& sel, const CLI::App* cmd, const std::string& contract,
                 const std::string& symmetry) {
  const CurvatureParams params = sel.resolve(cmd);
  const StructureConstants sc = family_constants(params);
  json out;
  out["kappa1"] = params.kappa1.value;
  out["kappa2"] = params.kappa2.value;
  out["group"] = std::string(to_string(classify(params)));
  out["structure_constants"] = constants_json(sc);
  if (!contract.empty()) {
    Contraction kind;
    if (contract == "speed-space")
      kind = Contraction::SpeedSpace;
    else if (contract == "speed-time")
      kind = Contraction::SpeedTime;
    else if (contract == "space-time")
      kind = Contraction::SpaceTime;
    else
      throw CLI::ValidationError("--contract", "expected speed-space, speed-time or space-time");
    const StructureConstants after = contract_sc(sc, kind);
    out["operation"] = "contract:" + contract;
    out["result"] = json{{"group", group_of_constants(after)},
                         {"structure_constants", constants_json(after)}};
  } else if (!symmetry.empty()) {
    Symmetry which;
    if (symmetry == "S_P")
      which = Symmetry::SP;
    else if (symmetry == "S_H")
      which = Symmetry::SH;
    else if (symmetry == "S_K")
      which = Symmetry::SK;
    else
      throw CLI::ValidationError("--symmetry", "expected S_P, S_H or S_K");
    const StructureConstants after = symmetry_sc(sc, which);
    out["operation"] = "symmetry:" + symmetry;
    out["result"] = json{{"group", group_of_constants(after)},
                         {"structure_constants", constants_json(after)}};
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_boost(const ParamSelection& sel, const CLI::App* cmd, double v, double t, double x) {
  const CurvatureParams params = sel.resolve(cmd);
  const double theta = ck_tan_inv(params.kappa2, -v);  // may raise the light-cone error
  const Event out = boost(params, v, Event{t, x});
  json record;
  record["kappa1"] = params.kappa1.value;
  record["kappa2"] = params.kappa2.value;
  record["velocity"] = v;
  record["rapidity"] = theta;
  record["input"] = json{{"t", t}, {"x", x}};
  record["output"] = json{{"t", out.t}, {"x", out.x}};
  std::cout << record.dump() << "\n";
  return 0;
}

struct CloudOptions {
  int count = 16;
  int thetas = 16;
  double theta_max = 6.283185307179586;
  double wmax = 1.5;
  double tmax = 1.0;
  double w0_re = 0.0;
  double w0_im = 0.0;
  double theta0 = 0.0;
};

int cmd_cloud(const ParamSelection& sel, const CLI::App* cmd, const std::string& what,
              const CloudOptions& opt, std::uint64_t seed) {
  const CurvatureParams params = sel.resolve(cmd);
  std::mt19937_64 rng(seed);
  auto uni = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  std::size_t skipped = 0;

  if (what == "fibers") {
    std::cout << "w_re,w_im,theta,x,y,u,v\n";
    std::vector<double> angles(static_cast<std::size_t>(opt.thetas));
    for (int m = 0; m < opt.thetas; ++m) angles[m] = opt.theta_max * m / opt.thetas;
    int emitted_fibers = 0;
    int attempts = 0;
    while (emitted_fibers < opt.count && attempts < 1000 * opt.count) {
      ++attempts;
      const ChartPoint c{GenComplex{uni(-opt.wmax, opt.wmax), uni(-opt.wmax, opt.wmax),
                                    params.kappa2},
                         Chart::W};
      if (fiber_radicand(c, params.kappa1) <= 1e-9) {
        ++skipped;
        continue;
      }
      const auto points = fiber_points(c, params, angles);
      for (std::size_t m = 0; m < points.size(); ++m) {
        const GenQuaternion& q = points[m].q();
        std::cout << fmt17(c.value.re) << ',' << fmt17(c.value.im) << ',' << fmt17(angles[m])
                  << ',' << fmt17(q.x) << ',' << fmt17(q.y) << ',' << fmt17(q.u) << ','
                  << fmt17(q.v) << "\n";
      }
      ++emitted_fibers;
    }
  } else if (what == "sphere") {
    std::cout << "w_re,w_im,Y,T,X\n";
    int emitted = 0;
    int attempts = 0;
    bool first = true;
    while (emitted < opt.count && attempts < 1000 * opt.count) {
      ++attempts;
      const GenComplex w = first ? gc_zero(params.kappa2)
                                 : GenComplex{uni(-opt.wmax, opt.wmax), uni(-opt.wmax, opt.wmax),
                                              params.kappa2};
      first = false;
      const double denom = 1.0 + params.kappa1.value * norm_sq(w);
      if (std::abs(denom) <= 1e-9) {
        ++skipped;
        continue;
      }
      const SphereCoords s = chart_to_sphere(w, params.kappa1);
      std::cout << fmt17(w.re) << ',' << fmt17(w.im) << ',' << fmt17(s.y) << ',' << fmt17(s.t)
                << ',' << fmt17(s.x) << "\n";
      ++emitted;
    }
  } else if (what == "geodesic") {
    std::cout << "t,x,y,u,v,w_re,w_im\n";
    const ChartPoint c0{GenComplex{opt.w0_re, opt.w0_im, params.kappa2}, Chart::W};
    if (fiber_radicand(c0, params.kappa1) <= 0.0)
      throw std::domain_error("cloud geodesic: start point lies on the null locus");
    const double theta0[1] = {opt.theta0};
    const SpherePoint q0 = fiber_points(c0, params, theta0).front();
    for (int n = 0; n < opt.count; ++n) {
      const double t = opt.count > 1 ? opt.tmax * n / (opt.count - 1) : 0.0;
      const SpherePoint at = horizontal_geodesic(q0, t);
      const ChartPoint w = pi_project(at);
      if (w.chart != Chart::W) {
        ++skipped;
        continue;
      }
      const GenQuaternion& q = at.q();
      std::cout << fmt17(t) << ',' << fmt17(q.x) << ',' << fmt17(q.y) << ',' << fmt17(q.u) << ','
                << fmt17(q.v) << ',' << fmt17(w.value.re) << ',' << fmt17(w.value.im) << "\n";
    }
  } else {
    throw CLI::ValidationError("what", "expected fibers, sphere or geodesic");
  }
  if (skipped > 0) std::cerr << "kinelab cloud: skipped " << skipped << " null-locus samples\n";
  return 0;
}

json suite_json(const CurvatureParams& params, const std::vector<InvariantResult>& results,
                std::string& first_failure) {
  json block;
  block["kappa1"] = params.kappa1.value;
  block["kappa2"] = params.kappa2.value;
  block["group"] = std::string(to_string(classify(params)));
  json arr = json::array();
  for (const InvariantResult& r : results) {
    arr.push_back(json{{"invariant", r.name},
                       {"passed", r.passed},
                       {"failed", r.failed},
                       {"max_error", r.max_error},
                       {"tolerance", r.tolerance}});
    if (!r.ok() && first_failure.empty()) first_failure = r.name;
  }
  block["results"] = arr;
  return block;
}

int cmd_verify(const ParamSelection& sel, const CLI::App* cmd, bool all, double tolerance,
               std::uint64_t seed) {
  VerifyOptions opt;
  opt.seed = seed;
  opt.tolerance_override = tolerance;
  std::string first_failure;
  json out;
  if (all) {
    json blocks = json::array();
    for (const char* name : {"dS", "adS", "M", "N+", "N-", "G", "H", "Eu", "El"}) {
      const CurvatureParams params = *preset_params(name);
      blocks.push_back(suite_json(params, run_invariant_suite(params, opt), first_failure));
    }
    out["suites"] = blocks;
  } else {
    const CurvatureParams params = sel.resolve(cmd);
    out = suite_json(params, run_invariant_suite(params, opt), first_failure);
  }
  out["all_passed"] = first_failure.empty();
  if (!first_failure.empty()) out["failed_invariant"] = first_failure;
  std::cout << out.dump() << "\n";
  return first_failure.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinelab: two-parameter kinematical geometries, generalized quaternions, and the "
               "circle fibration of the unit sphere"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "name the group and structure constants");
  ParamSelection classify_sel;
  classify_sel.add_options(classify_cmd, "json");
  std::string contract_kind, symmetry_kind;
  auto* copt = classify_cmd->add_option("--contract", contract_kind,
                                        "apply a contraction (speed-space|speed-time|space-time)");
  auto* sopt = classify_cmd->add_option("--symmetry", symmetry_kind,
                                        "apply a generator exchange (S_P|S_H|S_K)");
  copt->excludes(sopt);

  // boost
  auto* boost_cmd = app.add_subcommand("boost", "transform an event by an inertial boost");
  ParamSelection boost_sel;
  boost_sel.add_options(boost_cmd, "json");
  double velocity = 0.0, ev_t = 0.0, ev_x = 0.0;
  boost_cmd->add_option("-v,--velocity", velocity, "boost velocity")->required();
  boost_cmd->add_option("-t,--time", ev_t, "event time coordinate")->required();
  boost_cmd->add_option("-x,--space", ev_x, "event space coordinate")->required();

  // cloud
  auto* cloud_cmd = app.add_subcommand("cloud", "emit CSV point clouds");
  ParamSelection cloud_sel;
  cloud_sel.add_options(cloud_cmd, "csv");
  std::string what;
  CloudOptions cloud_opt;
  cloud_cmd->add_option("what", what, "fibers | sphere | geodesic")->required();
  cloud_cmd->add_option("--count", cloud_opt.count, "fibers / sphere points / geodesic samples");
  cloud_cmd->add_option("--thetas", cloud_opt.thetas, "fiber angles per fiber");
  cloud_cmd->add_option("--theta-max", cloud_opt.theta_max, "fiber angle range [0, theta-max)");
  cloud_cmd->add_option("--wmax", cloud_opt.wmax, "half-width of the sampled chart box");
  cloud_cmd->add_option("--tmax", cloud_opt.tmax, "geodesic parameter range [0, tmax]");
  cloud_cmd->add_option("--w0-re", cloud_opt.w0_re, "geodesic start chart value, real part");
  cloud_cmd->add_option("--w0-im", cloud_opt.w0_im, "geodesic start chart value, imaginary part");
  cloud_cmd->add_option("--theta0", cloud_opt.theta0, "geodesic start fiber phase");
  cloud_cmd->add_option("--seed", seed, "sampling seed (fallback: KINELAB_SEED)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the cross-module invariant suite");
  ParamSelection verify_sel;
  verify_sel.add_options(verify_cmd, "json");
  bool verify_all = false;
  double tolerance_override = 0.0;
  verify_cmd->add_flag("--all", verify_all, "run the suite over the nine sign patterns");
  verify_cmd->add_option("--tolerance", tolerance_override,
                         "override every per-invariant tolerance");
  verify_cmd->add_option("--seed", seed, "sampling seed (fallback: KINELAB_SEED)");

  try {
    app.parse(argc, argv);
    if (classify_cmd->parsed())
      return cmd_classify(classify_sel, classify_cmd, contract_kind, symmetry_kind);
    if (boost_cmd->parsed())
      return cmd_boost(boost_sel, boost_cmd, velocity, ev_t, ev_x);
    if (cloud_cmd->parsed())
      return cmd_cloud(cloud_sel, cloud_cmd, what, cloud_opt, resolve_seed(cloud_cmd, seed));
    if (verify_cmd->parsed()) {
      if (!verify_all && verify_sel.group.empty() && verify_cmd->count("--kappa1") == 0)
        throw CLI::ValidationError("parameters", "specify --group, kappas, or --all");
      return cmd_verify(verify_sel, verify_cmd, verify_all, tolerance_override,
                        resolve_seed(verify_cmd, seed));
    }
    return 2;
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "kinelab: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "kinelab: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "kinelab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "kinelab: " << e.what() << "\n";
    return 2;
  }
}
