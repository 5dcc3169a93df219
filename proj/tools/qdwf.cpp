// qdwf: convert multiqubit polarization states between density-matrix,
// Stokes-vector, and discrete-Wigner representations, export the per-net
// Hadamard transform family, and report entanglement scalars.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qdwf/entangle.hpp"
#include "qdwf/measurement.hpp"
#include "qdwf/quantops.hpp"
#include "qdwf/state_io.hpp"
#include "qdwf/transform.hpp"
#include "qdwf/verify.hpp"
#include "qdwf/version.hpp"

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  try {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw qdwf::ValidationError("cannot open input file \"" + path + "\"");
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw qdwf::ValidationError("malformed JSON: " + std::string(e.what()));
  }
}

void write_json(const json& j, const std::string& path) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file \"" + path + "\"");
  out << j.dump(2) << "\n";
}

struct NetContext {
  qdwf::PhaseSpace space;
  qdwf::MubSystem mubs;

  explicit NetContext(int n) : space(qdwf::PhaseSpace::standard(n)), mubs(qdwf::build_mubs(space)) {}

  qdwf::PhasePointOperators ops(std::uint64_t net) const {
    if (space.field().degree() > 3) {
      throw UsageError("dwf operations are limited to n <= 3 (net indices exceed 64 bits at n = 4)");
    }
    return qdwf::build_phase_point_operators(space, mubs, qdwf::net_from_index(space, net));
  }
};

std::uint64_t checked_net(const NetContext& ctx, std::uint64_t net) {
  const int n = ctx.space.field().degree();
  if (n > 3) {
    throw UsageError("dwf operations are limited to n <= 3 (net indices exceed 64 bits at n = 4)");
  }
  if (net >= qdwf::net_count(n)) {
    throw UsageError("--net " + std::to_string(net) + " out of range");
  }
  return net;
}

// The net a state's DWF payload is tied to: from the file for dwf inputs,
// from --net otherwise.
std::uint64_t source_net(const qdwf::StateFile& state, const std::optional<std::uint64_t>& net_flag) {
  if (state.representation == qdwf::Representation::dwf) {
    if (net_flag && *net_flag != *state.net_index) {
      throw UsageError("--net contradicts the net_index stored in the dwf input");
    }
    return *state.net_index;
  }
  return net_flag.value_or(0);
}

qdwf::DensityMatrix to_density(const qdwf::StateFile& state, const NetContext& ctx) {
  switch (state.representation) {
    case qdwf::Representation::density: return state.density();
    case qdwf::Representation::stokes: return qdwf::density_from_stokes(state.stokes());
    case qdwf::Representation::dwf:
      return qdwf::density_from_dwf(state.dwf(), ctx.ops(*state.net_index));
  }
  throw std::logic_error("unreachable");
}

int cmd_convert(const std::string& input, const std::string& to, std::optional<std::uint64_t> net_flag,
                const std::string& out) {
  qdwf::Representation target;
  try {
    target = qdwf::representation_from_string(to);
  } catch (const qdwf::ValidationError&) {
    throw UsageError("--to must be one of density, stokes, dwf");
  }
  if (net_flag && target != qdwf::Representation::dwf) {
    throw UsageError("--net is only valid when converting to dwf");
  }
  const qdwf::StateFile state = qdwf::state_from_json(read_json(input));
  NetContext ctx(state.n);

  qdwf::StateFile result;
  result.n = state.n;
  result.representation = target;
  const qdwf::DensityMatrix rho = to_density(state, ctx);
  switch (target) {
    case qdwf::Representation::density:
      result.data = rho;
      break;
    case qdwf::Representation::stokes:
      result.data = qdwf::stokes_from_density(rho);
      break;
    case qdwf::Representation::dwf: {
      // The target net comes from --net; a dwf input may fall back to the net
      // recorded in the file.
      std::uint64_t net;
      if (net_flag) {
        net = checked_net(ctx, *net_flag);
      } else if (state.representation == qdwf::Representation::dwf) {
        net = *state.net_index;
      } else {
        throw UsageError("--net is required when converting to dwf");
      }
      result.net_index = net;
      result.data = qdwf::dwf_from_density(rho, ctx.ops(net));
      break;
    }
  }
  write_json(qdwf::state_to_json(result), out);
  return 0;
}

int cmd_export_hadamard(int n, std::uint64_t net, const std::string& kind, const std::string& out) {
  if (n < 1 || n > 3) throw UsageError("export-hadamard supports --n in [1,3]");
  if (n == 3 && net != 0) throw UsageError("export-hadamard at n=3 is limited to --net 0");
  NetContext ctx(n);
  checked_net(ctx, net);
  const auto ops = ctx.ops(net);

  std::optional<qdwf::HadamardTransform> transform;
  if (kind == "H") {
    transform = qdwf::build_H(ops);
  } else if (kind == "T") {
    transform = qdwf::build_T(ops);
  } else if (kind == "H_tilde") {
    transform = qdwf::build_H_tilde(qdwf::build_H(ops), qdwf::build_T(ops));
  } else {
    throw UsageError("--kind must be one of H, T, H_tilde");
  }

  json rows = json::array();
  for (Eigen::Index r = 0; r < transform->signs().rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < transform->signs().cols(); ++c) row.push_back(transform->signs()(r, c));
    rows.push_back(std::move(row));
  }
  write_json(
      {
          {"n", n},
          {"net_index", net},
          {"kind", qdwf::to_string(transform->kind())},
          {"scale", "1/" + std::to_string(transform->dim())},
          {"signs", std::move(rows)},
          {"meta", qdwf::meta_json(n)},
      },
      out);
  return 0;
}

int cmd_measure(const std::string& input, int striation, const std::string& shots_arg, std::uint64_t seed,
                std::optional<std::uint64_t> net_flag, const std::string& out) {
  const qdwf::StateFile state = qdwf::state_from_json(read_json(input));
  NetContext ctx(state.n);
  const std::uint64_t net = checked_net(ctx, source_net(state, net_flag));
  const auto assignment =
      qdwf::assign_net(ctx.space, ctx.mubs, qdwf::net_from_index(ctx.space, net));
  const qdwf::DensityMatrix rho = to_density(state, ctx);

  qdwf::MeasurementReport report;
  if (shots_arg == "exact") {
    report = qdwf::measure_exact(rho, ctx.space, assignment, striation);
  } else {
    std::int64_t shots = 0;
    try {
      shots = std::stoll(shots_arg);
    } catch (const std::exception&) {
      throw UsageError("--shots must be a positive integer or \"exact\"");
    }
    if (shots <= 0) throw UsageError("--shots must be a positive integer or \"exact\"");
    report = qdwf::measure_sampled(rho, ctx.space, assignment, striation, shots, seed);
  }

  json j{
      {"n", state.n},
      {"net_index", net},
      {"striation_index", report.striation_index},
      {"probabilities", report.probabilities},
      {"meta", qdwf::meta_json(state.n)},
  };
  if (report.shots) {
    j["shots"] = *report.shots;
    j["seed"] = seed;
    j["counts"] = report.counts;
    j["estimates"] = report.estimates;
  } else {
    j["shots"] = "exact";
  }
  write_json(j, out);
  return 0;
}

int cmd_verify(int n, const std::string& depth_arg, std::uint64_t seed, const std::string& out) {
  qdwf::VerifyDepth depth;
  if (depth_arg == "quick") {
    depth = qdwf::VerifyDepth::quick;
  } else if (depth_arg == "full") {
    depth = qdwf::VerifyDepth::full;
  } else {
    throw UsageError("--depth must be quick or full");
  }
  qdwf::VerificationReport report;
  try {
    report = qdwf::run_verification(n, depth, seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"max_residual", c.max_residual}, {"detail", c.detail}});
  }
  write_json(
      {
          {"n", n},
          {"depth", depth_arg},
          {"seed", seed},
          {"checks", std::move(checks)},
          {"all_pass", report.all_pass()},
      },
      out);
  return report.all_pass() ? 0 : 3;
}

int cmd_report(const std::string& input, std::optional<std::uint64_t> net_flag, const std::string& out) {
  const qdwf::StateFile state = qdwf::state_from_json(read_json(input));
  NetContext ctx(state.n);
  const std::uint64_t net = checked_net(ctx, source_net(state, net_flag));
  const auto ops = ctx.ops(net);
  const qdwf::DensityMatrix rho = to_density(state, ctx);
  const qdwf::DwfVector w = qdwf::dwf_from_density(rho, ops);
  const auto scalars = qdwf::compute_scalars(w, qdwf::build_T(ops));

  json j{
      {"n", state.n},
      {"net_index", net},
      {"minkowski_sq", scalars.minkowski_sq},
      {"mixedness", scalars.mixedness},
      {"indistinguishability", scalars.indistinguishability},
      {"purity", scalars.purity},
      {"identity_residual", scalars.minkowski_sq + scalars.mixedness - scalars.indistinguishability},
      {"meta", qdwf::meta_json(state.n)},
  };
  if (scalars.concurrence) j["concurrence"] = *scalars.concurrence;
  write_json(j, out);
  return 0;
}

int cmd_dump_geometry(int n, const std::string& out) {
  if (n < 1 || n > qdwf::Field::kMaxDegree) throw UsageError("--n must be in [1,4]");
  const qdwf::PhaseSpace space = qdwf::PhaseSpace::standard(n);

  json points = json::array();
  for (const auto& pt : space.points()) points.push_back({pt.q.value(), pt.p.value()});
  json striations = json::array();
  for (const auto& s : space.striations()) {
    json lines = json::array();
    for (const auto& line : s.lines) {
      json line_points = json::array();
      for (const auto& pt : line.points) line_points.push_back({pt.q.value(), pt.p.value()});
      lines.push_back({{"a", line.a.value()},
                       {"b", line.b.value()},
                       {"c", line.c.value()},
                       {"points", std::move(line_points)}});
    }
    json inv = json::array();
    for (const auto& [a, b] : space.invariant_translations(s.index)) inv.push_back({a.value(), b.value()});
    striations.push_back({{"index", s.index},
                          {"direction", {s.direction.first.value(), s.direction.second.value()}},
                          {"invariant_translations", std::move(inv)},
                          {"lines", std::move(lines)}});
  }
  write_json(
      {
          {"n", n},
          {"N", space.dim()},
          {"points", std::move(points)},
          {"striations", std::move(striations)},
          {"meta", qdwf::meta_json(n)},
      },
      out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Wigner functions, Stokes vectors, and the per-net Hadamard transform family"};
  app.set_version_flag("--version", std::string(qdwf::kVersion));
  app.require_subcommand(1);

  std::string input = "-", out = "-", to, kind = "H", shots = "exact", depth = "quick";
  int n = 1, striation = 0;
  std::uint64_t net = 0, seed = 0;
  std::optional<std::uint64_t> net_flag;
  auto capture_net = [&net_flag](std::uint64_t v) { net_flag = v; };

  auto* convert = app.add_subcommand("convert", "Convert a state file between representations");
  convert->add_option("input", input, "input state file, or - for stdin");
  convert->add_option("--to", to, "target representation: density, stokes, dwf")->required();
  convert->add_option_function<std::uint64_t>("--net", capture_net, "quantum net index for dwf targets");
  convert->add_option("--out", out, "output file, or - for stdout");

  auto* exporth = app.add_subcommand("export-hadamard", "Export a transform of the Hadamard family");
  exporth->add_option("--n", n, "qubit count")->required();
  exporth->add_option("--net", net, "quantum net index");
  exporth->add_option("--kind", kind, "H, T, or H_tilde");
  exporth->add_option("--out", out, "output file, or - for stdout");

  auto* measure = app.add_subcommand("measure", "Striation measurement probabilities");
  measure->add_option("input", input, "input state file, or - for stdin");
  measure->add_option("--striation", striation, "striation index in [0, N]")->required();
  measure->add_option("--shots", shots, "sample count, or \"exact\"");
  measure->add_option("--seed", seed, "sampling seed");
  measure->add_option_function<std::uint64_t>("--net", capture_net, "quantum net index (non-dwf inputs)");
  measure->add_option("--out", out, "output file, or - for stdout");

  auto* verify = app.add_subcommand("verify", "Run the cross-module invariant suite");
  verify->add_option("--n", n, "qubit count")->required();
  verify->add_option("--depth", depth, "quick or full");
  verify->add_option("--seed", seed, "seed for randomized checks");
  verify->add_option("--out", out, "output file, or - for stdout");

  auto* report = app.add_subcommand("report", "Entanglement and state-quality scalars");
  report->add_option("input", input, "input state file, or - for stdin");
  report->add_option_function<std::uint64_t>("--net", capture_net, "quantum net index (non-dwf inputs)");
  report->add_option("--out", out, "output file, or - for stdout");

  auto* geometry = app.add_subcommand("dump-geometry", "Dump points, lines, and striations");
  geometry->add_option("--n", n, "qubit count")->required();
  geometry->add_option("--out", out, "output file, or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (convert->parsed()) return cmd_convert(input, to, net_flag, out);
    if (exporth->parsed()) return cmd_export_hadamard(n, net, kind, out);
    if (measure->parsed()) return cmd_measure(input, striation, shots, seed, net_flag, out);
    if (verify->parsed()) return cmd_verify(n, depth, seed, out);
    if (report->parsed()) return cmd_report(input, net_flag, out);
    if (geometry->parsed()) return cmd_dump_geometry(n, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const qdwf::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
