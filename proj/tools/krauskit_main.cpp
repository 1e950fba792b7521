// krauskit: command-line front end for building, checking and searching
// finite-dimensional quantum channels over the shared JSON file formats.
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kraus/io.hpp"
#include "kraus/random.hpp"
#include "kraus/reachability.hpp"
#include "kraus/synthesis.hpp"

namespace {

using kraus::io::Json;

struct GlobalOptions {
  kraus::Tolerances tol;
  std::uint64_t seed = 0;
  std::string format = "human"; // human | json
};

std::string scalar_text(const Json& v) {
  if (v.is_number_float())
    return kraus::io::format_double(v.get<double>());
  if (v.is_string())
    return v.get<std::string>();
  return v.dump();
}

// human mode prints "key = value" lines with the same numbers the json
// report carries
void emit_report(const Json& report, const GlobalOptions& opt) {
  if (opt.format == "json") {
    std::cout << kraus::io::serialize(report);
    return;
  }
  for (const auto& [key, value] : report.items()) {
    std::cout << key << " = ";
    if (value.is_array()) {
      std::cout << "[";
      for (size_t i = 0; i < value.size(); ++i) {
        if (i)
          std::cout << ", ";
        std::cout << scalar_text(value[i]);
      }
      std::cout << "]";
    } else {
      std::cout << scalar_text(value);
    }
    std::cout << "\n";
  }
}

kraus::StrategyTag parse_strategy(const std::string& name) {
  if (name == "auto") return kraus::StrategyTag::Auto;
  if (name == "unitary") return kraus::StrategyTag::UnitaryTransfer;
  if (name == "pta") return kraus::StrategyTag::PureToAny;
  if (name == "atp") return kraus::StrategyTag::AllToPure;
  if (name == "all-to-any") return kraus::StrategyTag::AllToAny;
  if (name == "composed") return kraus::StrategyTag::ComposedPtaAtp;
  if (name == "qubit-ptp") return kraus::StrategyTag::QubitPtp;
  throw kraus::Error(kraus::ErrorCode::ParseError, "unknown strategy: " + name);
}

// "re,im;re,im;re,im;re,im"
std::array<kraus::Complex, 4> parse_ptp_coeffs(const std::string& text) {
  std::array<kraus::Complex, 4> out;
  std::istringstream stream(text);
  std::string part;
  size_t i = 0;
  while (std::getline(stream, part, ';')) {
    if (i >= 4)
      throw kraus::Error(kraus::ErrorCode::ParseError, "expected four coefficients");
    double re = 0.0, im = 0.0;
    char comma = 0;
    std::istringstream p(part);
    if (!(p >> re >> comma >> im) || comma != ',')
      throw kraus::Error(kraus::ErrorCode::ParseError,
                         "bad coefficient \"" + part + "\", expected re,im");
    out[i++] = kraus::Complex(re, im);
  }
  if (i != 4)
    throw kraus::Error(kraus::ErrorCode::ParseError, "expected four coefficients");
  return out;
}

int run_verify(const std::string& channel_path, const GlobalOptions& opt) {
  Json doc = kraus::io::load_json_file(channel_path);
  std::vector<kraus::ComplexMatrix> ops = kraus::io::channel_ops_from_json(doc);

  kraus::Index n = ops.front().rows();
  kraus::ComplexMatrix sum = kraus::ComplexMatrix::Zero(n, n);
  for (const auto& k : ops)
    sum += k.adjoint() * k;
  double tp_residual = kraus::max_dist(sum, kraus::identity(n));

  kraus::ComplexMatrix choi = kraus::choi_matrix_of(ops);
  Eigen::SelfAdjointEigenSolver<kraus::ComplexMatrix> solver(choi, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw kraus::Error(kraus::ErrorCode::EigenFailure, "Choi eigensolver failed");
  double min_eig = solver.eigenvalues().minCoeff();
  kraus::Index rank = 0;
  for (kraus::Index i = 0; i < solver.eigenvalues().size(); ++i)
    if (solver.eigenvalues()(i) > opt.tol.rank)
      ++rank;

  bool cptp = tp_residual <= opt.tol.tp && min_eig >= -opt.tol.psd;
  double reported_min = (min_eig < 0.0 && min_eig >= -opt.tol.psd) ? 0.0 : min_eig;

  Json report;
  report["tp_residual"] = tp_residual;
  report["cp_min_eigenvalue"] = reported_min;
  report["kraus_rank"] = rank;
  report["is_unitary"] = (rank == 1);
  report["cptp"] = cptp;
  emit_report(report, opt);
  return cptp ? 0 : 1;
}

int run_synthesize(const std::string& in_path, const std::string& target_path,
                   const std::string& out_path, const std::string& strategy_name,
                   std::optional<std::uint64_t> basis_seed,
                   const std::string& ptp_coeffs, const std::string& intermediate_path,
                   const GlobalOptions& opt) {
  kraus::DensityMatrix rho_in =
      kraus::io::state_from_json(kraus::io::load_json_file(in_path), opt.tol);
  kraus::DensityMatrix rho_f =
      kraus::io::state_from_json(kraus::io::load_json_file(target_path), opt.tol);

  kraus::SynthesisStrategy strategy;
  strategy.tag = parse_strategy(strategy_name);
  if (basis_seed)
    strategy.basis = kraus::Basis::seeded(*basis_seed);
  if (!ptp_coeffs.empty())
    strategy.ptp_coeffs = parse_ptp_coeffs(ptp_coeffs);
  if (!intermediate_path.empty()) {
    kraus::DensityMatrix inter =
        kraus::io::state_from_json(kraus::io::load_json_file(intermediate_path), opt.tol);
    kraus::Spectrum spec = kraus::spectral_decompose(inter, opt.tol);
    if (1.0 - spec.eigenvalues(0) > opt.tol.rank)
      throw kraus::Error(kraus::ErrorCode::StrategyInapplicable,
                         "intermediate state must be pure");
    strategy.intermediate = spec.eigenstate(0);
  }

  kraus::SynthesisResult result = kraus::synthesize(rho_in, rho_f, strategy, opt.tol);
  double residual = kraus::max_dist(
      kraus::apply(result.map, rho_in, opt.tol).matrix(), rho_f.matrix());
  kraus::io::write_json_file(out_path, kraus::io::channel_to_json(result.map));

  Json report;
  report["strategy"] = kraus::strategy_name(result.chosen);
  report["operators"] = result.map.size();
  report["transfer_residual"] = residual;
  report["output"] = out_path;
  emit_report(report, opt);
  return residual <= opt.tol.eq ? 0 : 1;
}

int run_apply(const std::string& channel_path, const std::string& dilation_path,
              const std::string& state_path, const std::string& out_path,
              const GlobalOptions& opt) {
  kraus::DensityMatrix rho =
      kraus::io::state_from_json(kraus::io::load_json_file(state_path), opt.tol);

  std::optional<kraus::DensityMatrix> out;
  if (!channel_path.empty()) {
    kraus::KrausMap phi =
        kraus::io::channel_from_json(kraus::io::load_json_file(channel_path), opt.tol);
    out = kraus::apply(phi, rho, opt.tol);
  } else {
    kraus::Dilation dil =
        kraus::io::dilation_from_json(kraus::io::load_json_file(dilation_path), opt.tol);
    if (dil.system_dim != rho.dim())
      throw kraus::Error(kraus::ErrorCode::DimMismatch,
                         "dilation and state dimensions differ");
    kraus::ComplexMatrix ref =
        kraus::ComplexMatrix::Zero(dil.ancilla_dim, dil.ancilla_dim);
    ref(dil.ancilla_ref, dil.ancilla_ref) = 1.0;
    kraus::ComplexMatrix joint = kraus::kron(rho.matrix(), ref);
    kraus::ComplexMatrix evolved = dil.unitary * joint * dil.unitary.adjoint();
    out = kraus::DensityMatrix(
        kraus::partial_trace_raw(evolved, dil.system_dim, dil.ancilla_dim, 2), opt.tol);
  }

  kraus::io::write_json_file(out_path, kraus::io::state_to_json(*out));
  Json report;
  report["purity"] = (out->matrix() * out->matrix()).trace().real();
  report["output"] = out_path;
  emit_report(report, opt);
  return 0;
}

int run_compose(const std::string& first_path, const std::string& second_path,
                const std::string& out_path, const GlobalOptions& opt) {
  kraus::KrausMap first =
      kraus::io::channel_from_json(kraus::io::load_json_file(first_path), opt.tol);
  kraus::KrausMap second =
      kraus::io::channel_from_json(kraus::io::load_json_file(second_path), opt.tol);
  // the composed channel applies `first`, then `second`
  kraus::KrausMap composed = kraus::compose(second, first, opt.tol);
  kraus::io::write_json_file(out_path, kraus::io::channel_to_json(composed));
  Json report;
  report["operators"] = composed.size();
  report["output"] = out_path;
  emit_report(report, opt);
  return 0;
}

int run_dilate(const std::string& channel_path, const std::string& out_path,
               const GlobalOptions& opt) {
  kraus::KrausMap phi =
      kraus::io::channel_from_json(kraus::io::load_json_file(channel_path), opt.tol);
  kraus::Dilation dil = kraus::stinespring_dilate(phi, opt.tol);
  double residual = kraus::max_dist(dil.unitary.adjoint() * dil.unitary,
                                    kraus::identity(dil.unitary.rows()));
  kraus::io::write_json_file(out_path, kraus::io::dilation_to_json(dil));
  Json report;
  report["system_dim"] = dil.system_dim;
  report["ancilla_dim"] = dil.ancilla_dim;
  report["unitarity_residual"] = residual;
  report["output"] = out_path;
  emit_report(report, opt);
  return 0;
}

int run_choi(const std::string& channel_path, const std::string& out_path,
             const GlobalOptions& opt) {
  kraus::KrausMap phi =
      kraus::io::channel_from_json(kraus::io::load_json_file(channel_path), opt.tol);
  kraus::ChoiMatrix choi = kraus::kraus_to_choi(phi, opt.tol);
  kraus::io::write_json_file(out_path, kraus::io::choi_to_json(choi));
  Json report;
  report["dim"] = choi.dim();
  report["choi_rank"] = kraus::kraus_rank(phi, opt.tol);
  report["choi_trace"] = choi.matrix().trace().real();
  report["output"] = out_path;
  emit_report(report, opt);
  return 0;
}

int run_kraus(const std::string& choi_path, const std::string& out_path,
              const GlobalOptions& opt) {
  kraus::ChoiMatrix choi =
      kraus::io::choi_from_json(kraus::io::load_json_file(choi_path), opt.tol);
  kraus::KrausMap phi = kraus::choi_to_kraus(choi, opt.tol);
  kraus::io::write_json_file(out_path, kraus::io::channel_to_json(phi));
  Json report;
  report["dim"] = phi.dim();
  report["operators"] = phi.size();
  report["output"] = out_path;
  emit_report(report, opt);
  return 0;
}

int run_reach(const std::string& controls_path, const std::string& source_path,
              const std::string& target_path, const std::string& target_channel_path,
              kraus::Index depth, double tol, const GlobalOptions& opt) {
  kraus::ControlSet controls =
      kraus::io::control_set_from_json(kraus::io::load_json_file(controls_path), opt.tol);

  kraus::ReachabilityReport report;
  if (!target_channel_path.empty()) {
    kraus::KrausMap target = kraus::io::channel_from_json(
        kraus::io::load_json_file(target_channel_path), opt.tol);
    report = kraus::reach_channel(target, controls, depth, tol, opt.tol);
  } else {
    if (source_path.empty() || target_path.empty())
      throw kraus::Error(kraus::ErrorCode::ParseError,
                         "state search needs --source and --target");
    kraus::DensityMatrix rho0 =
        kraus::io::state_from_json(kraus::io::load_json_file(source_path), opt.tol);
    kraus::DensityMatrix target =
        kraus::io::state_from_json(kraus::io::load_json_file(target_path), opt.tol);
    report = kraus::reach_state(rho0, target, controls, depth, tol, opt.tol);
  }
  emit_report(kraus::io::report_to_json(report), opt);
  return 0;
}

int run_random_state(kraus::Index dim, kraus::Index rank, const std::string& out_path,
                     const GlobalOptions& opt) {
  kraus::DensityMatrix rho = kraus::random_density(dim, rank, opt.seed, opt.tol);
  kraus::io::write_json_file(out_path, kraus::io::state_to_json(rho));
  Json report;
  report["dim"] = dim;
  report["rank"] = rank;
  report["purity"] = (rho.matrix() * rho.matrix()).trace().real();
  report["output"] = out_path;
  emit_report(report, opt);
  return 0;
}

int run_thermal_state(const std::string& hamiltonian_path, double beta,
                      const std::string& out_path, const GlobalOptions& opt) {
  kraus::ComplexMatrix h0 =
      kraus::io::matrix_from_json(kraus::io::load_json_file(hamiltonian_path));
  kraus::DensityMatrix rho = kraus::thermal_state(h0, beta, opt.tol);
  kraus::io::write_json_file(out_path, kraus::io::state_to_json(rho));
  Json report;
  report["dim"] = rho.dim();
  report["purity"] = (rho.matrix() * rho.matrix()).trace().real();
  report["output"] = out_path;
  emit_report(report, opt);
  return 0;
}

int run_metrics(const std::string& state1_path, const std::string& state2_path,
                const GlobalOptions& opt) {
  kraus::DensityMatrix rho1 =
      kraus::io::state_from_json(kraus::io::load_json_file(state1_path), opt.tol);
  kraus::DensityMatrix rho2 =
      kraus::io::state_from_json(kraus::io::load_json_file(state2_path), opt.tol);
  kraus::StateMetrics m = kraus::state_metrics(rho1, rho2, opt.tol);
  Json report;
  report["trace_distance"] = m.trace_distance;
  report["purity1"] = m.purity1;
  report["purity2"] = m.purity2;
  report["vn_entropy1"] = m.vn_entropy1;
  report["vn_entropy2"] = m.vn_entropy2;
  emit_report(report, opt);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"krauskit: build, verify, transform and search quantum channels"};
  app.require_subcommand(1);
  app.fallthrough(); // global flags may follow the subcommand

  GlobalOptions opt;
  app.add_option("--tol-eq", opt.tol.eq, "equality residual tolerance");
  app.add_option("--tol-tp", opt.tol.tp, "trace-preservation tolerance");
  app.add_option("--tol-psd", opt.tol.psd, "positivity tolerance");
  app.add_option("--tol-herm", opt.tol.herm, "Hermiticity tolerance");
  app.add_option("--tol-tr", opt.tol.trace, "trace tolerance");
  app.add_option("--tol-rank", opt.tol.rank, "spectral support threshold");
  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"human", "json"}));

  // verify
  auto* verify = app.add_subcommand("verify", "check a channel file for the CPTP property");
  std::string verify_channel;
  verify->add_option("channel", verify_channel, "channel file")->required();

  // synthesize
  auto* synth = app.add_subcommand("synthesize", "build a channel sending one state to another");
  std::string synth_in, synth_target, synth_out, synth_strategy = "auto";
  std::string synth_coeffs, synth_intermediate;
  std::optional<std::uint64_t> synth_basis_seed;
  synth->add_option("--in", synth_in, "input state file")->required();
  synth->add_option("--target", synth_target, "target state file")->required();
  synth->add_option("--out", synth_out, "output channel file")->required();
  synth->add_option("--strategy", synth_strategy,
                    "auto|unitary|pta|atp|all-to-any|composed|qubit-ptp");
  synth->add_option("--basis-seed", synth_basis_seed, "seed for a random basis");
  synth->add_option("--ptp-coeffs", synth_coeffs, "re,im;re,im;re,im;re,im");
  synth->add_option("--intermediate", synth_intermediate, "intermediate pure state file");

  // apply
  auto* apply_cmd = app.add_subcommand("apply", "apply a channel or dilation to a state");
  std::string apply_channel, apply_dilation, apply_state, apply_out;
  auto* apply_channel_opt = apply_cmd->add_option("--channel", apply_channel, "channel file");
  auto* apply_dilation_opt = apply_cmd->add_option("--dilation", apply_dilation, "dilation file");
  apply_channel_opt->excludes(apply_dilation_opt);
  apply_cmd->add_option("--state", apply_state, "state file")->required();
  apply_cmd->add_option("--out", apply_out, "output state file")->required();

  // compose
  auto* compose_cmd = app.add_subcommand("compose", "compose two channels (first applied first)");
  std::string compose_first, compose_second, compose_out;
  compose_cmd->add_option("--first", compose_first, "channel applied first")->required();
  compose_cmd->add_option("--second", compose_second, "channel applied second")->required();
  compose_cmd->add_option("--out", compose_out, "output channel file")->required();

  // dilate
  auto* dilate_cmd = app.add_subcommand("dilate", "Stinespring dilation of a channel");
  std::string dilate_channel, dilate_out;
  dilate_cmd->add_option("--channel", dilate_channel, "channel file")->required();
  dilate_cmd->add_option("--out", dilate_out, "output dilation file")->required();

  // choi
  auto* choi_cmd = app.add_subcommand("choi", "Choi matrix of a channel");
  std::string choi_channel, choi_out;
  choi_cmd->add_option("--channel", choi_channel, "channel file")->required();
  choi_cmd->add_option("--out", choi_out, "output choi file")->required();

  // kraus
  auto* kraus_cmd = app.add_subcommand("kraus", "minimal Kraus operators of a Choi matrix");
  std::string kraus_choi, kraus_out;
  kraus_cmd->add_option("--choi", kraus_choi, "choi file")->required();
  kraus_cmd->add_option("--out", kraus_out, "output channel file")->required();

  // reach
  auto* reach_cmd = app.add_subcommand("reach", "breadth-first reachability search");
  std::string reach_controls, reach_source, reach_target, reach_target_channel;
  kraus::Index reach_depth = 0;
  double reach_tol = 1e-6;
  reach_cmd->add_option("--controls", reach_controls, "control set file")->required();
  reach_cmd->add_option("--source", reach_source, "source state file");
  reach_cmd->add_option("--target", reach_target, "target state file");
  reach_cmd->add_option("--target-channel", reach_target_channel, "target channel file");
  reach_cmd->add_option("--depth", reach_depth, "maximum composition depth")->required();
  reach_cmd->add_option("--tol", reach_tol, "match/dedup tolerance");

  // random-state
  auto* random_cmd = app.add_subcommand("random-state", "seeded random density matrix");
  kraus::Index random_dim = 2, random_rank = 1;
  std::string random_out;
  random_cmd->add_option("--dim", random_dim, "dimension")->required();
  random_cmd->add_option("--rank", random_rank, "rank")->required();
  random_cmd->add_option("--out", random_out, "output state file")->required();

  // thermal-state
  auto* thermal_cmd = app.add_subcommand("thermal-state", "Gibbs state of a Hamiltonian");
  std::string thermal_h, thermal_out;
  double thermal_beta = 1.0;
  thermal_cmd->add_option("--hamiltonian", thermal_h, "Hermitian matrix file")->required();
  thermal_cmd->add_option("--beta", thermal_beta, "inverse temperature")->required();
  thermal_cmd->add_option("--out", thermal_out, "output state file")->required();

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "distance and entropy diagnostics");
  std::string metrics_a, metrics_b;
  metrics_cmd->add_option("state1", metrics_a, "first state file")->required();
  metrics_cmd->add_option("state2", metrics_b, "second state file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify)
      return run_verify(verify_channel, opt);
    if (*synth)
      return run_synthesize(synth_in, synth_target, synth_out, synth_strategy,
                            synth_basis_seed, synth_coeffs, synth_intermediate, opt);
    if (*apply_cmd) {
      if (apply_channel.empty() && apply_dilation.empty())
        throw kraus::Error(kraus::ErrorCode::ParseError,
                           "apply needs --channel or --dilation");
      return run_apply(apply_channel, apply_dilation, apply_state, apply_out, opt);
    }
    if (*compose_cmd)
      return run_compose(compose_first, compose_second, compose_out, opt);
    if (*dilate_cmd)
      return run_dilate(dilate_channel, dilate_out, opt);
    if (*choi_cmd)
      return run_choi(choi_channel, choi_out, opt);
    if (*kraus_cmd)
      return run_kraus(kraus_choi, kraus_out, opt);
    if (*reach_cmd)
      return run_reach(reach_controls, reach_source, reach_target, reach_target_channel,
                       reach_depth, reach_tol, opt);
    if (*random_cmd)
      return run_random_state(random_dim, random_rank, random_out, opt);
    if (*thermal_cmd)
      return run_thermal_state(thermal_h, thermal_beta, thermal_out, opt);
    if (*metrics_cmd)
      return run_metrics(metrics_a, metrics_b, opt);
  } catch (const kraus::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == kraus::ErrorCode::ParseError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
