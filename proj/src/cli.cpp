#include "spd_bregman/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spd_bregman/divergences.hpp"
#include "spd_bregman/errors.hpp"
#include "spd_bregman/means.hpp"
#include "spd_bregman/mirror_maps.hpp"
#include "spd_bregman/sampling.hpp"
#include "spd_bregman/variational.hpp"

namespace spdb::cli {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& source, const std::string& what) {
  throw SpdError(ErrorCode::ParseError, source + ": " + what);
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"rows", std::move(rows)}};
}

struct Input {
  std::string role;
  std::string file;
  MatrixFile data;
};

SpdMatrix load_spd(Input& in, const std::string& role, const std::string& path) {
  in.role = role;
  in.file = path;
  in.data = read_matrix_file(path);
  try {
    return validate_spd(in.data.rows);
  } catch (const SpdError& e) {
    throw SpdError(e.code(), path + ": " + e.what());
  }
}

json input_json(const Input& in, const SpdMatrix& m) {
  return json{{"role", in.role}, {"name", in.data.name}, {"file", in.file}, {"digest", digest(m)}};
}

json base_document(const std::string& operation) {
  return json{{"operation", operation},
              {"inputs", json::array()},
              {"map", nullptr},
              {"mean", nullptr},
              {"direction", nullptr},
              {"warnings", json::array()},
              {"tool_version", kToolVersion},
              {"seed", nullptr}};
}

MapKind require_map(const std::string& tag) {
  if (auto m = parse_map_tag(tag)) return *m;
  throw SpdError(ErrorCode::InvalidArgument, "unknown map '" + tag + "' (expected frobenius, von-neumann or burg)");
}

LogarithmicVariant parse_variant(const std::string& tag) {
  if (tag == "literal") return LogarithmicVariant::LiteralIntegral;
  if (tag == "geodesic") return LogarithmicVariant::GeodesicIntegral;
  throw SpdError(ErrorCode::InvalidArgument, "unknown logarithmic variant '" + tag + "' (expected literal or geodesic)");
}

/// Resolves a mean tag; "canonical" picks the canonical mean for `side`.
MeanKind resolve_mean(const std::string& tag, std::optional<MapKind> map, std::optional<Side> side) {
  if (tag == "canonical" && side) {
    if (*side == Side::Forward) return MeanKind::of(MeanType::CanonicalForward);
    if (!map) throw SpdError(ErrorCode::InvalidArgument, "--map is required for the canonical reverse mean");
    return MeanKind::canonical_reverse(*map);
  }
  auto type = parse_mean_tag(tag);
  if (!type) throw SpdError(ErrorCode::InvalidArgument, "unknown mean '" + tag + "'");
  if (*type == MeanType::CanonicalReverse) {
    if (!map) throw SpdError(ErrorCode::InvalidArgument, "--map is required for canonical-reverse");
    return MeanKind::canonical_reverse(*map);
  }
  return MeanKind::of(*type);
}

json report_json(const VerificationReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"input_digest", f.input_digest}, {"residual", f.residual}, {"detail", f.detail}});
  }
  return json{{"check", to_string(r.check)},
              {"subject", r.subject},
              {"samples", r.samples},
              {"max_residual", r.max_residual},
              {"tolerance", r.tolerance},
              {"passed", r.passed},
              {"failures", std::move(failures)},
              {"findings", r.findings}};
}

json axiom_report_json(const AxiomReport& r) {
  json axioms = json::array();
  for (const auto& a : r.axioms) {
    json item{{"axiom", a.axiom},
              {"passed", a.passed},
              {"max_residual", a.max_residual},
              {"tolerance", a.tolerance},
              {"samples", a.samples}};
    item["witness"] = a.witness ? json(*a.witness) : json(nullptr);
    axioms.push_back(std::move(item));
  }
  json doc{{"mean", describe(r.mean)},
           {"dim", r.n},
           {"samples", r.samples},
           {"axioms", std::move(axioms)},
           {"invariance_class", to_string(r.invariance)},
           {"gl_residual", r.gl_residual},
           {"on_residual", r.on_residual}};
  if (r.gl_witness) {
    doc["gl_witness"] = json{{"p", matrix_json(r.gl_witness->p)},
                             {"a", matrix_json(r.gl_witness->a.matrix())},
                             {"b", matrix_json(r.gl_witness->b.matrix())},
                             {"residual", r.gl_witness->residual}};
  } else {
    doc["gl_witness"] = nullptr;
  }
  return doc;
}

// ---------------------------------------------------------------------------

struct DivergenceFlags {
  std::string map, x, y, kind, mean;
  int quad_nodes = kDefaultQuadNodes;
  std::string log_variant = "literal";
};

json cmd_divergence(const DivergenceFlags& f) {
  static const std::vector<std::string> kinds{"plain",     "jeffreys",       "forward", "reverse",
                                              "js-closed", "reverse-closed", "s-div"};
  if (std::find(kinds.begin(), kinds.end(), f.kind) == kinds.end()) {
    throw SpdError(ErrorCode::InvalidArgument, "unknown divergence kind '" + f.kind + "'");
  }
  std::optional<MapKind> map;
  if (!f.map.empty()) map = require_map(f.map);
  if (!map && f.kind != "s-div") throw SpdError(ErrorCode::InvalidArgument, "--map is required for --kind " + f.kind);

  std::optional<Side> side;
  if (f.kind == "forward") side = Side::Forward;
  if (f.kind == "reverse") side = Side::Reverse;
  if (side && f.mean.empty()) throw SpdError(ErrorCode::InvalidArgument, "--mean is required for --kind " + f.kind);
  if (!side && !f.mean.empty()) throw SpdError(ErrorCode::InvalidArgument, "--mean only applies to forward/reverse");

  Input ix, iy;
  const SpdMatrix x = load_spd(ix, "x", f.x);
  const SpdMatrix y = load_spd(iy, "y", f.y);
  require_same_dim(x, y, "divergence");

  const MapRegistry maps;
  const MeanOptions options{f.quad_nodes, parse_variant(f.log_variant)};
  DivergenceValue result;
  json mean_tag = nullptr;
  if (f.kind == "plain") {
    result = bregman(maps.get(*map), x, y);
  } else if (f.kind == "jeffreys") {
    result = jeffreys(maps.get(*map), x, y);
  } else if (side) {
    const MeanKind kind = resolve_mean(f.mean, map, side);
    const SpdMatrix m = mean_dispatch(kind, x, y, maps, options);
    result = *side == Side::Forward ? forward_symmetrized(maps.get(*map), x, y, m, kind)
                                    : reverse_symmetrized(maps.get(*map), x, y, m, kind);
    mean_tag = describe(kind);
  } else if (f.kind == "js-closed") {
    result = jensen_shannon_closed(maps.get(*map), x, y);
    mean_tag = describe(MeanKind::of(MeanType::Arithmetic));
  } else if (f.kind == "reverse-closed") {
    result = canonical_reverse_closed(maps.get(*map), x, y);
    mean_tag = describe(MeanKind::canonical_reverse(*map));
  } else {
    result = s_divergence(x, y);
    mean_tag = describe(MeanKind::of(MeanType::Arithmetic));
  }

  json doc = base_document("divergence");
  doc["inputs"] = json::array({input_json(ix, x), input_json(iy, y)});
  doc["map"] = map ? json(map_tag(*map)) : json(map_tag(MapKind::Burg));
  doc["mean"] = mean_tag;
  doc["direction"] = f.kind;
  doc["value"] = result.value;
  doc["warnings"] = result.warnings;
  return doc;
}

struct MeanFlags {
  std::string kind, a, b, map;
  int quad_nodes = kDefaultQuadNodes;
  std::string log_variant = "literal";
};

json cmd_mean(const MeanFlags& f) {
  std::optional<MapKind> map;
  if (!f.map.empty()) map = require_map(f.map);
  const MeanKind kind = resolve_mean(f.kind, map, std::nullopt);

  Input ia, ib;
  const SpdMatrix a = load_spd(ia, "a", f.a);
  const SpdMatrix b = load_spd(ib, "b", f.b);
  require_same_dim(a, b, "mean");

  const MapRegistry maps;
  const MeanOptions options{f.quad_nodes, parse_variant(f.log_variant)};
  json warnings = json::array();
  SpdMatrix m = a;
  if (kind.type == MeanType::Logarithmic) {
    const auto detailed = logarithmic_mean_detailed(a, b, options.quad_nodes, options.logarithmic_variant);
    if (detailed.asymmetry > kAsymmetryTolerance) {
      std::ostringstream w;
      w << "quadrature result was non-symmetric before symmetrization (relative asymmetry " << detailed.asymmetry
        << ")";
      warnings.push_back(w.str());
    }
    m = detailed.mean;
  } else {
    m = mean_dispatch(kind, a, b, maps, options);
  }

  json doc = base_document("mean");
  doc["inputs"] = json::array({input_json(ia, a), input_json(ib, b)});
  if (kind.map) doc["map"] = map_tag(*kind.map);
  doc["mean"] = describe(kind);
  doc["matrix"] = matrix_json(m.matrix());
  doc["warnings"] = std::move(warnings);
  return doc;
}

struct VerifyFlags {
  std::string map, direction;
  int dim = 3;
  int samples = 50;
  std::uint64_t seed = 0;
  double tolerance = 1e-4;
  int max_iters = 500;
};

json cmd_verify(const VerifyFlags& f, bool& passed) {
  const MapKind kind = require_map(f.map);
  Side side;
  if (f.direction == "forward") {
    side = Side::Forward;
  } else if (f.direction == "reverse") {
    side = Side::Reverse;
  } else {
    throw SpdError(ErrorCode::InvalidArgument, "unknown direction '" + f.direction + "' (expected forward or reverse)");
  }
  const MapRegistry maps;
  const MirrorMap& map = maps.get(kind);
  OptimizerConfig cfg;
  cfg.max_iters = f.max_iters;
  cfg.seed = f.seed;

  const std::vector<VerificationReport> reports{
      verify_theorem(map, side, f.dim, f.samples, cfg, f.seed, f.tolerance),
      verify_gradient(map, side, f.dim, f.samples, f.seed),
      verify_closed_forms(map, f.dim, f.samples, f.seed),
  };
  passed = true;
  json checks = json::array();
  json findings = json::array();
  for (const auto& r : reports) {
    passed = passed && r.passed;
    checks.push_back(report_json(r));
    for (const auto& s : r.findings) findings.push_back(std::string(to_string(r.check)) + ": " + s);
  }

  json doc = base_document("verify");
  doc["map"] = map_tag(kind);
  doc["mean"] = side == Side::Forward ? describe(MeanKind::of(MeanType::CanonicalForward))
                                      : describe(MeanKind::canonical_reverse(kind));
  doc["direction"] = f.direction;
  doc["value"] = reports.front().max_residual;
  doc["seed"] = f.seed;
  doc["report"] = json{{"passed", passed}, {"checks", std::move(checks)}, {"findings", std::move(findings)}};
  return doc;
}

struct AxiomFlags {
  std::string mean, map;
  int dim = 3;
  int samples = 100;
  std::uint64_t seed = 0;
  int quad_nodes = kDefaultQuadNodes;
  std::string log_variant = "literal";
};

json cmd_axioms(const AxiomFlags& f) {
  std::optional<MapKind> map;
  if (!f.map.empty()) map = require_map(f.map);
  const MeanKind kind = resolve_mean(f.mean, map, std::nullopt);
  const MapRegistry maps;
  const MeanOptions options{f.quad_nodes, parse_variant(f.log_variant)};
  const AxiomReport report = audit_mean_axioms(kind, f.dim, f.samples, f.seed, maps, options);

  json warnings = json::array();
  for (const auto& a : report.axioms) {
    if (!a.passed) warnings.push_back("axiom " + a.axiom + " failed (max residual " + std::to_string(a.max_residual) + ")");
  }
  json doc = base_document("axioms");
  if (kind.map) doc["map"] = map_tag(*kind.map);
  doc["mean"] = describe(kind);
  doc["value"] = report.gl_residual;
  doc["seed"] = f.seed;
  doc["warnings"] = std::move(warnings);
  doc["report"] = axiom_report_json(report);
  return doc;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DualDomainViolation: return kExitDualDomain;
    case ErrorCode::DimMismatch: return kExitDimMismatch;
    default: return kExitUsage;
  }
}

MatrixFile parse_matrix_document(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(source, std::string("not a valid document: ") + e.what());
  }
  if (!doc.is_object()) parse_fail(source, "top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) parse_fail(source, "\"dim\" must be an integer");
  const auto dim = doc["dim"].get<long long>();
  if (dim < 1) parse_fail(source, "\"dim\" must be positive");
  if (!doc.contains("rows") || !doc["rows"].is_array()) parse_fail(source, "\"rows\" must be an array");
  const json& rows = doc["rows"];
  if (static_cast<long long>(rows.size()) != dim) {
    parse_fail(source, "\"rows\" has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(dim));
  }
  MatrixFile out;
  out.rows.resize(dim, dim);
  for (long long i = 0; i < dim; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<long long>(row.size()) != dim) {
      parse_fail(source, "rows[" + std::to_string(i) + "] must hold " + std::to_string(dim) + " numbers");
    }
    for (long long j = 0; j < dim; ++j) {
      if (!row[j].is_number()) {
        parse_fail(source, "rows[" + std::to_string(i) + "][" + std::to_string(j) + "] is not a number");
      }
      out.rows(i, j) = row[j].get<double>();
    }
  }
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) parse_fail(source, "\"name\" must be a string");
    out.name = doc["name"].get<std::string>();
  } else {
    out.name = source;
  }
  return out;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix_document(buf.str(), path);
}

std::string matrix_document(const Matrix& m, const std::string& name) {
  json doc = matrix_json(m);
  if (!name.empty()) doc["name"] = name;
  return doc.dump(2);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bregman divergences and matrix means on the SPD cone", "spd_bregman"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  DivergenceFlags dflags;
  auto* div = app.add_subcommand("divergence", "Evaluate a Bregman divergence or one of its symmetrizations");
  div->add_option("--map", dflags.map, "frobenius | von-neumann | burg");
  div->add_option("--x", dflags.x, "first matrix file")->required();
  div->add_option("--y", dflags.y, "second matrix file")->required();
  div->add_option("--kind", dflags.kind, "plain | jeffreys | forward | reverse | js-closed | reverse-closed | s-div")
      ->required();
  div->add_option("--mean", dflags.mean,
                  "arithmetic | geometric | harmonic | log-euclidean | logarithmic | canonical");
  div->add_option("--quad-nodes", dflags.quad_nodes, "quadrature nodes for the logarithmic mean")
      ->check(CLI::PositiveNumber);
  div->add_option("--logarithmic-variant", dflags.log_variant, "literal | geodesic");

  MeanFlags mflags;
  auto* mean = app.add_subcommand("mean", "Compute a matrix mean");
  mean->add_option("--kind", mflags.kind,
                   "arithmetic | geometric | harmonic | log-euclidean | logarithmic | canonical-forward | "
                   "canonical-reverse")
      ->required();
  mean->add_option("--a", mflags.a, "first matrix file")->required();
  mean->add_option("--b", mflags.b, "second matrix file")->required();
  mean->add_option("--map", mflags.map, "mirror map for canonical-reverse");
  mean->add_option("--quad-nodes", mflags.quad_nodes, "quadrature nodes for the logarithmic mean")
      ->check(CLI::PositiveNumber);
  mean->add_option("--logarithmic-variant", mflags.log_variant, "literal | geodesic");

  VerifyFlags vflags;
  auto* verify = app.add_subcommand("verify", "Recover a canonical mean by direct minimization");
  verify->add_option("--map", vflags.map)->required();
  verify->add_option("--direction", vflags.direction, "forward | reverse")->required();
  verify->add_option("--dim", vflags.dim)->check(CLI::PositiveNumber);
  verify->add_option("--samples", vflags.samples)->check(CLI::PositiveNumber);
  verify->add_option("--seed", vflags.seed);
  verify->add_option("--tolerance", vflags.tolerance)->check(CLI::PositiveNumber);
  verify->add_option("--max-iters", vflags.max_iters)->check(CLI::PositiveNumber);

  AxiomFlags aflags;
  auto* axioms = app.add_subcommand("axioms", "Audit the mean axioms and the invariance class of a mean");
  axioms->add_option("--mean", aflags.mean)->required();
  axioms->add_option("--map", aflags.map, "mirror map for canonical-reverse");
  axioms->add_option("--dim", aflags.dim)->check(CLI::PositiveNumber);
  axioms->add_option("--samples", aflags.samples)->check(CLI::PositiveNumber);
  axioms->add_option("--seed", aflags.seed);
  axioms->add_option("--quad-nodes", aflags.quad_nodes)->check(CLI::PositiveNumber);
  axioms->add_option("--logarithmic-variant", aflags.log_variant, "literal | geodesic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    json doc;
    int status = kExitOk;
    if (*div) {
      doc = cmd_divergence(dflags);
    } else if (*mean) {
      doc = cmd_mean(mflags);
    } else if (*verify) {
      bool passed = false;
      doc = cmd_verify(vflags, passed);
      if (!passed) status = kExitVerificationFailed;
    } else {
      doc = cmd_axioms(aflags);
    }
    out << doc.dump(2) << '\n';
    return status;
  } catch (const SpdError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace spdb::cli
