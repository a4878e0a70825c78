#include <CLI11.hpp>
#include <Eigen/Core>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "minflex/json_io.hpp"

namespace fs = std::filesystem;
using namespace minflex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

Vec parse_vec(const std::string& s) {
  const auto vals = parse_list(s);
  Vec v(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
  return v;
}

void write_report(const fs::path& out_dir, const json& report) {
  fs::create_directories(out_dir);
  std::ofstream out(out_dir / "report.json");
  out << report.dump(2) << "\n";
}

struct Config {
  std::string domain, body, tau, surface;
  std::string from_pt, to_pt, offset;
  std::string radii = "1,10,100";
  std::string out_dir = ".";
  std::string format;
  int p = 1;
  int grid = 64;
  int segments = 8;
  unsigned seed = 42;
  double scale = 1.0;
  double null_tol = 1e-6;
  double dist_tol = 1e-9;
  bool complex_mode = false;
  bool certify = false;
};

int exit_for(Verdict v) { return v == Verdict::Flexible ? kExitOk : kExitNegative; }

int run_classify(const Config& cfg) {
  ClassificationResult result;
  if (cfg.complex_mode) {
    const ConvexBody body =
        body_from_json(load_json(cfg.body.empty() ? cfg.domain : cfg.body));
    result = classify_complex_complement(body);
  } else if (!cfg.body.empty()) {
    result = classify_convex_complement(body_from_json(load_json(cfg.body)));
  } else {
    result = classify_domain(domain_from_json(load_json(cfg.domain)));
  }
  json report = classification_to_json(result);
  report["command"] = "classify";
  report["seed"] = cfg.seed;
  write_report(cfg.out_dir, report);
  std::cout << to_string(result.verdict) << " (" << to_string(result.reason)
            << ")\n";
  return exit_for(result.verdict);
}

int run_check_psh(const Config& cfg) {
  const ScalarField tau = field_from_json(load_json(cfg.tau));
  const PshReport psh = is_p_psh(tau, cfg.p, cfg.grid);
  json report = psh_report_to_json(psh);
  report["command"] = "check-psh";
  bool ok = psh.psh;
  if (cfg.certify) {
    const PConvexCertificate cert = certify_p_convex(tau, cfg.p, cfg.grid);
    report["certificate"] = p_convex_to_json(cert);
    ok = cert.certified && cert.gate_ok;
  }
  write_report(cfg.out_dir, report);
  std::cout << (ok ? "certified" : "violation") << " (min partial sum "
            << psh.min_partial_sum << ")\n";
  return ok ? kExitOk : kExitNegative;
}

WeierstrassSample build_surface(const Config& cfg) {
  CatalogueParams params;
  params.grid = cfg.grid;
  params.scale = cfg.scale;
  if (!cfg.offset.empty()) params.offset = parse_vec(cfg.offset);
  return surface_catalogue(cfg.surface, params);
}

void export_mesh(const Config& cfg, const WeierstrassSample& s, json& report) {
  if (cfg.format.empty() || cfg.format == "json") return;
  fs::create_directories(cfg.out_dir);
  const fs::path path =
      fs::path(cfg.out_dir) / (cfg.surface + "." + cfg.format);
  if (cfg.format == "obj") write_obj(s, path.string());
  else if (cfg.format == "csv") write_csv(s, path.string());
  else throw Error(ErrorCode::InvalidParams, "unknown format " + cfg.format);
  report["mesh"] = path.filename().string();
}

int run_verify_surface(const Config& cfg) {
  const WeierstrassSample s = build_surface(cfg);
  const ConformalityReport conf = conformality_residuals(s);
  json report;
  report["command"] = "verify-surface";
  report["surface"] = cfg.surface;
  report["conformality"] = conformality_to_json(conf);
  bool ok = conf.max_null <= cfg.null_tol && conf.max_harmonic <= cfg.null_tol;
  if (!s.domain.loops.empty()) {
    json periods = json::array();
    for (const Vec& p : period_integrals(s)) {
      periods.push_back(vec_to_json(p));
      ok = ok && p.norm() <= 1e-6;
    }
    report["periods"] = periods;
  }
  if (!cfg.domain.empty()) {
    const DomainSpec omega = domain_from_json(load_json(cfg.domain));
    const ContainmentReport cont = contained_in(s, omega);
    report["containment"] = containment_to_json(cont);
    ok = ok && cont.fraction == 1.0;
  }
  export_mesh(cfg, s, report);
  write_report(cfg.out_dir, report);
  std::cout << (ok ? "verified" : "violation") << " (max null "
            << conf.max_null << ", max harmonic " << conf.max_harmonic << ")\n";
  return ok ? kExitOk : kExitNegative;
}

int run_witness(const Config& cfg) {
  const DomainSpec omega = domain_from_json(load_json(cfg.domain));
  const ClassificationResult result = classify_domain(omega);
  json report = classification_to_json(result);
  report["command"] = "witness";
  bool ok = result.verdict == Verdict::Flexible && result.witness.has_value();
  if (ok) {
    const Witness& w = *result.witness;
    const bool tube = verify_tube_condition(omega, w.plane, w.delta / 2.0);
    const bool growth =
        verify_growth_condition(omega, w.plane, parse_list(cfg.radii));
    report["recheck"] = {{"tube_at_half_delta", tube}, {"growth", growth}};
    ok = tube && growth;
  }
  write_report(cfg.out_dir, report);
  std::cout << (ok ? "witness verified" : "no verified witness") << "\n";
  return ok ? kExitOk : kExitNegative;
}

int run_extend_arc(const Config& cfg) {
  const DomainSpec omega = domain_from_json(load_json(cfg.domain));
  const ArcExtension arc = extend_arc(parse_vec(cfg.from_pt), parse_vec(cfg.to_pt),
                                      omega, cfg.segments, cfg.seed);
  json report = arc_to_json(arc);
  report["command"] = "extend-arc";
  report["seed"] = cfg.seed;
  write_report(cfg.out_dir, report);
  std::cout << "arc with " << arc.h.size() << " segments\n";
  return kExitOk;
}

int run_catalogue(const Config& cfg) {
  json report;
  report["command"] = "catalogue";
  bool ok = true;
  for (const std::string name : {"plane", "enneper", "catenoid", "helicoid"}) {
    Config item = cfg;
    item.surface = name;
    const WeierstrassSample s = build_surface(item);
    const ConformalityReport conf = conformality_residuals(s);
    json entry = {{"conformality", conformality_to_json(conf)}};
    export_mesh(item, s, entry);
    report["surfaces"][name] = entry;
    ok = ok && conf.max_null <= cfg.null_tol && conf.max_harmonic <= cfg.null_tol;
  }
  write_report(cfg.out_dir, report);
  std::cout << (ok ? "catalogue verified" : "violation") << "\n";
  return ok ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("MINFLEX_THREADS"))
    Eigen::setNbThreads(std::max(1, std::atoi(threads)));

  CLI::App app{"Flexibility classifiers and minimal-surface verification"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_dir, "Output directory for report.json");
    sub->add_option("--seed", cfg.seed, "Seed for randomized searches");
    sub->add_option("--grid", cfg.grid, "Grid resolution per axis");
    sub->add_option("--null-tol", cfg.null_tol, "Residual tolerance");
    sub->add_option("--dist-tol", cfg.dist_tol, "Distance tolerance");
    return sub;
  };

  auto* classify = add_common(app.add_subcommand("classify", "Classify a domain"));
  classify->add_option("--domain", cfg.domain, "Domain JSON (file or inline)");
  classify->add_option("--body", cfg.body, "Convex body JSON (complement classification)");
  classify->add_flag("--complex", cfg.complex_mode, "Complex-case classification");

  auto* psh = add_common(app.add_subcommand("check-psh", "Check p-plurisubharmonicity"));
  psh->add_option("--tau", cfg.tau, "Scalar field JSON")->required();
  psh->add_option("--p", cfg.p, "Eigenvalue count")->required();
  psh->add_flag("--certify", cfg.certify, "Emit a p-convexity certificate");

  auto* verify = add_common(app.add_subcommand("verify-surface", "Verify catalogue surface data"));
  verify->add_option("--surface", cfg.surface, "plane|enneper|catenoid|helicoid")->required();
  verify->add_option("--domain", cfg.domain, "Optional containment domain JSON");
  verify->add_option("--scale", cfg.scale, "Surface scale");
  verify->add_option("--offset", cfg.offset, "Translation, comma separated");
  verify->add_option("--format", cfg.format, "Mesh export: obj|csv");

  auto* witness = add_common(app.add_subcommand("witness", "Classify and re-verify the witness"));
  witness->add_option("--domain", cfg.domain, "Domain JSON")->required();
  witness->add_option("--radii", cfg.radii, "Growth radii, comma separated");

  auto* arc = add_common(app.add_subcommand("extend-arc", "Null-lifted polyline between points"));
  arc->add_option("--domain", cfg.domain, "Domain JSON")->required();
  arc->add_option("--from", cfg.from_pt, "Start point, comma separated")->required();
  arc->add_option("--to", cfg.to_pt, "End point, comma separated")->required();
  arc->add_option("--segments", cfg.segments, "Minimum segment count");

  auto* cat = add_common(app.add_subcommand("catalogue", "Verify and export the surface catalogue"));
  cat->add_option("--format", cfg.format, "Mesh export: obj|csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) {
      if (cfg.domain.empty() && cfg.body.empty())
        throw Error(ErrorCode::InvalidParams, "classify needs --domain or --body");
      return run_classify(cfg);
    }
    if (psh->parsed()) return run_check_psh(cfg);
    if (verify->parsed()) return run_verify_surface(cfg);
    if (witness->parsed()) return run_witness(cfg);
    if (arc->parsed()) return run_extend_arc(cfg);
    if (cat->parsed()) return run_catalogue(cfg);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
