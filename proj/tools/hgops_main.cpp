// Command-line front end: construct functions with a small spec language,
// apply the classical/generalized/sublinear Hilbert operators, compute space
// norms and growth profiles, run probe suites, and emit JSON/CSV.
//
// Exit codes: 0 success, 2 domain/precondition error, 3 numerical
// non-convergence.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hgops/hgops.hpp"

namespace {

using namespace hgops;

// --- function spec mini-language ------------------------------------------
//   const:V              constant V
//   mono:M               z^M
//   poly:c0,c1,...       real coefficient list
//   log-kernel           log(1/(1-z))
//   rational:a,c         c/(1-a z)^2
//   coeff:k^-S           b_k = k^{-S}
//   cauchy:w@t;w@t;...   sum_j w_j/(1 - e^{-i t_j} z)
//   @path or {...}       series JSON ({"degree":K,"re":[...],"im":[...]})

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw domain_error("could not parse number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

FunctionSpec parse_function_spec(const std::string& text) {
  if (text.empty()) throw domain_error("empty function spec");
  if (text[0] == '{' || text[0] == '@') {
    json j;
    if (text[0] == '@') {
      std::ifstream in(text.substr(1));
      if (!in) throw domain_error("cannot open series file " + text.substr(1));
      in >> j;
    } else {
      j = json::parse(text);
    }
    const PowerSeries f = series_from_json(j);
    return Polynomial{f.coeffs()};
  }
  if (text == "log-kernel") return LogKernel{};
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) throw domain_error("unrecognized function spec '" + text + "'");
  const std::string head = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  if (head == "const") {
    return Polynomial{{cplx(std::stod(body), 0.0)}};
  }
  if (head == "mono") {
    const long m = std::stol(body);
    if (m < 0) throw domain_error("mono: exponent must be >= 0");
    std::vector<cplx> c(static_cast<std::size_t>(m) + 1, cplx(0.0, 0.0));
    c.back() = cplx(1.0, 0.0);
    return Polynomial{std::move(c)};
  }
  if (head == "poly") {
    std::vector<cplx> c;
    for (const double v : parse_number_list(body)) c.emplace_back(v, 0.0);
    if (c.empty()) throw domain_error("poly: need at least one coefficient");
    return Polynomial{std::move(c)};
  }
  if (head == "rational") {
    const std::vector<double> v = parse_number_list(body);
    if (v.size() != 2) throw domain_error("rational: expected 'rational:a,c'");
    return RationalKernel{v[1], v[0]};
  }
  if (head == "coeff") {
    // expected form k^-S
    if (body.rfind("k^", 0) != 0) throw domain_error("coeff: expected 'coeff:k^-S'");
    const double e = std::stod(body.substr(2));
    return CoefficientRule{-e};
  }
  if (head == "cauchy") {
    CauchyTransform ct;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ';')) {
      if (item.empty()) continue;
      const std::size_t at = item.find('@');
      if (at == std::string::npos) throw domain_error("cauchy: expected 'w@theta' nodes");
      const double w = std::stod(item.substr(0, at));
      const double theta = std::stod(item.substr(at + 1));
      ct.nodes.push_back({cplx(w, 0.0), std::polar(1.0, theta)});
    }
    if (ct.nodes.empty()) throw domain_error("cauchy: need at least one node");
    return ct;
  }
  throw domain_error("unrecognized function spec '" + text + "'");
}

std::size_t spec_native_degree(const FunctionSpec& spec, std::size_t fallback) {
  if (const auto* p = std::get_if<Polynomial>(&spec)) {
    return p->coeffs.empty() ? 0 : p->coeffs.size() - 1;
  }
  return fallback;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw domain_error("cannot write to " + out_path);
    out << text << "\n";
  }
}

SpaceParams make_space(const std::string& kind, double p, double alpha) {
  if (kind == "hardy") return SpaceParams::hardy(p);
  if (kind == "bergman") return SpaceParams::bergman(p, alpha);
  if (kind == "dirichlet") return SpaceParams::dirichlet(p, alpha);
  throw domain_error("unknown space '" + kind + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"generalized Hilbert operators on truncated Taylor series"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 1;
  app.add_option("--threads", threads, "worker threads for batch experiments")
      ->envname("HGOPS_THREADS");

  // ---- apply ----
  auto* apply = app.add_subcommand("apply", "apply an operator in coefficient space");
  std::string apply_op = "classic", apply_f, apply_g, apply_out;
  std::size_t apply_K = 16;
  apply->add_option("--op", apply_op, "classic | hg | sublinear")->required();
  apply->add_option("--f", apply_f, "input function spec (non-polynomial specs materialize at degree K)")
      ->required();
  apply->add_option("--g", apply_g, "symbol g for --op hg");
  apply->add_option("--K", apply_K, "output truncation degree")->capture_default_str();
  apply->add_option("--out,-o", apply_out, "output path (default stdout)");

  // ---- norm ----
  auto* norm = app.add_subcommand("norm", "compute a space norm");
  std::string norm_space = "hardy", norm_f, norm_out;
  double norm_p = 2.0, norm_alpha = 0.0;
  std::size_t norm_K = 256;
  norm->add_option("--space", norm_space, "hardy | bergman | dirichlet")->capture_default_str();
  norm->add_option("--p", norm_p, "exponent p")->capture_default_str();
  norm->add_option("--alpha", norm_alpha, "weight alpha (ignored for hardy)")->capture_default_str();
  norm->add_option("--f", norm_f, "function spec")->required();
  norm->add_option("--K", norm_K, "materialization degree for non-polynomial specs")->capture_default_str();
  norm->add_option("--out,-o", norm_out, "output path (default stdout)");

  // ---- probe ----
  auto* probe = app.add_subcommand("probe", "boundedness/compactness experiment");
  std::string probe_g, probe_space = "hardy", probe_out, probe_csv, probe_profile_csv;
  double probe_p = 2.0, probe_alpha = 0.0;
  std::string probe_ladder = "128,512,2048", probe_nlist = "16,64,256,1024";
  std::size_t probe_budget = 32, probe_fdeg = 0;
  std::uint64_t probe_seed = 1;
  bool probe_compact = false;
  probe->add_option("--g", probe_g, "operator symbol spec")->required();
  probe->add_option("--space", probe_space, "hardy | bergman | dirichlet")->capture_default_str();
  probe->add_option("--p", probe_p, "exponent p")->capture_default_str();
  probe->add_option("--alpha", probe_alpha, "weight alpha")->capture_default_str();
  probe->add_option("--ladder", probe_ladder, "comma list of g truncation degrees")->capture_default_str();
  probe->add_option("--nlist", probe_nlist, "comma list of compactness N values")->capture_default_str();
  probe->add_option("--budget", probe_budget, "random trials per truncation")->capture_default_str();
  probe->add_option("--f-degree", probe_fdeg, "candidate function degree (0 = quarter of each rung)")->capture_default_str();
  probe->add_option("--seed", probe_seed, "RNG seed (recorded in output)")->capture_default_str();
  probe->add_flag("--compact", probe_compact, "run only the compactness probe");
  probe->add_option("--out,-o", probe_out, "report JSON path (default stdout)");
  probe->add_option("--csv", probe_csv, "also write the compactness ladder CSV here");
  probe->add_option("--profile-csv", probe_profile_csv, "also write the dyadic profile CSV here");

  // ---- hs ----
  auto* hs = app.add_subcommand("hs", "Hilbert-Schmidt partial sums (CSV)");
  std::string hs_g, hs_space = "h2", hs_out;
  double hs_alpha = 0.5;
  std::size_t hs_K = 1000;
  hs->add_option("--g", hs_g, "operator symbol spec")->required();
  hs->add_option("--space", hs_space, "h2 | bergman | dirichlet")->capture_default_str();
  hs->add_option("--alpha", hs_alpha, "basis weight alpha")->capture_default_str();
  hs->add_option("--K", hs_K, "partial sum cutoff")->capture_default_str();
  hs->add_option("--out,-o", hs_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (apply->parsed()) {
    const FunctionSpec f_spec = parse_function_spec(apply_f);
    PowerSeries result;
    std::string method = "closed_form";
    double max_err = 0.0;
    if (apply_op == "classic") {
      const PowerSeries f = materialize(f_spec, spec_native_degree(f_spec, apply_K));
      result = hilbert_classic(f, apply_K);
    } else if (apply_op == "hg") {
      if (apply_g.empty()) throw domain_error("apply --op hg requires --g");
      const FunctionSpec g_spec = parse_function_spec(apply_g);
      const PowerSeries g = materialize(g_spec, apply_K + 1);
      const MomentSequence mu = moments(f_spec, apply_K);
      method = mu.method == MomentMethod::closed_form ? "closed_form" : "quadrature";
      for (const double e : mu.abs_error) max_err = std::max(max_err, e);
      result = apply_hg(g, mu, apply_K);
    } else if (apply_op == "sublinear") {
      const PowerSeries f = materialize(f_spec, spec_native_degree(f_spec, apply_K));
      const MomentSequence mu = abs_moments(f, apply_K);
      method = "quadrature";
      for (const double e : mu.abs_error) max_err = std::max(max_err, e);
      std::vector<cplx> c(apply_K + 1);
      for (std::size_t j = 0; j <= apply_K; ++j) c[j] = cplx(mu.at(j).real(), 0.0);
      result = PowerSeries(std::move(c));
    } else {
      throw domain_error("apply: unknown --op '" + apply_op + "'");
    }
    json out;
    out["series"] = series_to_json(result);
    out["provenance"] = json{{"op", apply_op}, {"moment_method", method}, {"max_abs_error", max_err}};
    emit(out.dump(2), apply_out);
    return 0;
  }

  if (norm->parsed()) {
    const SpaceParams S = make_space(norm_space, norm_p, norm_alpha);
    const FunctionSpec f_spec = parse_function_spec(norm_f);
    const PowerSeries f = materialize(f_spec, spec_native_degree(f_spec, norm_K));
    const NormResult res = space_norm_detailed(f, S);
    json out;
    out["value"] = res.value;
    out["space"] = space_to_json(S);
    out["degree"] = f.degree();
    out["resolutions"] =
        json{{"angular_samples", hgops::detail::angular_sample_count(f.degree(), S.p)},
             {"radial_nodes", res.radial_nodes},
             {"radial_change", res.radial_change}};
    emit(out.dump(2), norm_out);
    return 0;
  }

  if (probe->parsed()) {
    const SpaceParams S = make_space(probe_space, probe_p, probe_alpha);
    const FunctionSpec g_spec = parse_function_spec(probe_g);
    ProbeConfig config;
    config.truncation_ladder.clear();
    for (const double v : parse_number_list(probe_ladder)) {
      config.truncation_ladder.push_back(static_cast<std::size_t>(v));
    }
    config.compact_N.clear();
    for (const double v : parse_number_list(probe_nlist)) {
      config.compact_N.push_back(static_cast<unsigned>(v));
    }
    config.budget = probe_budget;
    config.seed = probe_seed;
    config.threads = threads;
    config.f_degree = probe_fdeg;
    config.compact_only = probe_compact;
    config.progress = [](const std::string& msg) {
      std::fprintf(stderr, "probe: %s\n", msg.c_str());
    };
    const ProbeReport report = verdict_report(g_spec, S, config);
    emit(report_to_json(report).dump(2), probe_out);
    if (!probe_csv.empty()) emit(ladder_to_csv(report.compactness), probe_csv);
    if (!probe_profile_csv.empty()) emit(profile_to_csv(report.profile), probe_profile_csv);
    return 0;
  }

  if (hs->parsed()) {
    const FunctionSpec g_spec = parse_function_spec(hs_g);
    const PowerSeries g = materialize(g_spec, hs_K + 1);
    HsSpace space;
    if (hs_space == "h2") {
      space = HsSpace::H2;
    } else if (hs_space == "bergman") {
      space = HsSpace::Bergman;
    } else if (hs_space == "dirichlet") {
      space = HsSpace::Dirichlet;
    } else {
      throw domain_error("hs: unknown --space '" + hs_space + "'");
    }
    const std::vector<double> sums = hs_sum(g, space, hs_alpha, hs_K);
    emit(hs_to_csv(sums), hs_out);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const hgops::convergence_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const hgops::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const hgops::precondition_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
