// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/cli.h"

#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "cienet/errors.h"
#include "cienet/gradcheck.h"
#include "cienet/metrics.h"
#include "cienet/mixer.h"
#include "cienet/model_io.h"
#include "cienet/network.h"
#include "cienet/wav.h"
#include "json.hpp"

namespace cienet::cli {
namespace {

using json = nlohmann::json;

Waveform read_input(const std::string& path, const char* what) {
  Waveform w = read_wav(path);
  if (w.sample_rate_hz != kDefaultSampleRate)
    throw DomainError(std::string(what) + " " + path + " is sampled at " +
                      std::to_string(w.sample_rate_hz) + " Hz; only " +
                      std::to_string(kDefaultSampleRate) +
                      " Hz input is accepted");
  return w;
}

json model_summary(const ModelParams& p) {
  return {{"param_count", param_count(p)},
          {"hyper", json::parse(hyper_json(p.hyper))}};
}

struct MixArgs {
  std::string target, interferer, noise, out, out_ref;
  double sir = 0.0;
  std::optional<double> snr;
  std::uint64_t seed = 0;
};

int do_mix(const MixArgs& a, std::ostream& out) {
  const Waveform target = read_input(a.target, "target");
  const Waveform interferer = read_input(a.interferer, "interferer");
  std::optional<Waveform> noise;
  if (!a.noise.empty()) noise = read_input(a.noise, "noise");
  if (noise && !a.snr) throw ParameterError("--noise requires --snr");
  if (!noise && a.snr) throw ParameterError("--snr requires --noise");
  // Mixing is deterministic; the seed is carried for manifest provenance.
  const MixResult r = mix(target, interferer, a.sir,
                          noise ? &*noise : nullptr, a.snr);
  write_wav(r.mixture, a.out);
  write_wav(r.target, a.out_ref);
  json j = {{"out", a.out},
            {"out_ref", a.out_ref},
            {"samples", r.mixture.size()},
            {"sir_db", a.sir},
            {"interferer_gain", r.interferer_gain},
            {"seed", a.seed}};
  if (noise) {
    j["snr_db"] = *a.snr;
    j["noise_gain"] = r.noise_gain;
  }
  out << j.dump() << '\n';
  return kExitOk;
}

int do_init(const std::string& arch, std::uint64_t seed,
            const std::string& path, std::ostream& out) {
  HyperParams hp;
  hp.block_kind = parse_block_kind(arch);
  const ModelParams p = init_params(hp, seed);
  save(p, path);
  json j = model_summary(p);
  j["out"] = path;
  out << j.dump() << '\n';
  return kExitOk;
}

int do_extract(const std::string& model, const std::string& mixture,
               const std::string& enroll, const std::string& path,
               std::ostream& out) {
  const ModelParams p = load(model);
  const Waveform y = read_input(mixture, "mixture");
  const Waveform e = read_input(enroll, "enrollment");
  const Waveform x = extract(y, e, p);
  write_wav(x, path);
  out << json{{"out", path}, {"samples", x.size()}}.dump() << '\n';
  return kExitOk;
}

int do_eval(const std::string& est_path, const std::string& mix_path,
            const std::string& ref_path, std::ostream& out) {
  const Waveform est = read_wav(est_path);
  const Waveform mixture = read_wav(mix_path);
  const Waveform ref = read_wav(ref_path);
  if (est.sample_rate_hz != ref.sample_rate_hz ||
      mixture.sample_rate_hz != ref.sample_rate_hz)
    throw DomainError("inputs have different sample rates");
  const EvalReport r = improvements(est.samples, mixture.samples, ref.samples);
  out << json{{"si_sdr_db", r.si_sdr_db},
              {"si_sdri_db", r.si_sdri_db},
              {"sdr_db", r.sdr_db},
              {"sdri_db", r.sdri_db},
              {"capped", r.capped}}
             .dump()
      << '\n';
  return kExitOk;
}

int do_gradcheck(std::uint64_t seed, double eps, std::ostream& out) {
  bool ok = true;
  for (const GradReport& r : run_gradcheck(seed, eps)) {
    ok = ok && r.passed();
    out << json{{"component", r.component},
                {"max_rel_error", r.max_rel_error},
                {"eps", r.eps},
                {"seed", r.seed},
                {"checked", r.checked},
                {"skipped", r.skipped},
                {"passed", r.passed()}}
               .dump()
        << '\n';
  }
  return ok ? kExitOk : kExitFailure;
}

int do_inspect(const std::string& model, std::ostream& out) {
  out << model_summary(load(model)).dump() << '\n';
  return kExitOk;
}

int do_manifest(const std::string& dir, std::uint64_t seed, std::size_t count,
                double sir_min, double sir_max, const std::string& path,
                std::ostream& out) {
  const auto rows = make_manifest(dir, seed, count, {sir_min, sir_max});
  write_manifest(rows, path);
  out << json{{"out", path}, {"rows", rows.size()}}.dump() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Target speaker extraction toolkit"};
  app.require_subcommand(1);

  MixArgs mix_args;
  auto* mix_cmd = app.add_subcommand("mix", "Mix target and interferer WAVs");
  mix_cmd->add_option("--target", mix_args.target)->required();
  mix_cmd->add_option("--interferer", mix_args.interferer)->required();
  mix_cmd->add_option("--sir", mix_args.sir, "Target-to-interferer dB")
      ->required();
  mix_cmd->add_option("--noise", mix_args.noise);
  mix_cmd->add_option("--snr", mix_args.snr, "Speech-to-noise dB");
  mix_cmd->add_option("--seed", mix_args.seed);
  mix_cmd->add_option("--out", mix_args.out)->required();
  mix_cmd->add_option("--out-ref", mix_args.out_ref)->required();

  std::string arch = "mdprnn", model_out;
  std::uint64_t init_seed = 0;
  auto* init_cmd = app.add_subcommand("init", "Write a seeded model");
  init_cmd->add_option("--arch", arch, "mdprnn or mdptnet");
  init_cmd->add_option("--seed", init_seed);
  init_cmd->add_option("--out", model_out)->required();

  std::string model, mixture, enroll, est_out;
  auto* extract_cmd =
      app.add_subcommand("extract", "Extract the enrolled speaker");
  extract_cmd->add_option("--model", model)->required();
  extract_cmd->add_option("--mixture", mixture)->required();
  extract_cmd->add_option("--enroll", enroll)->required();
  extract_cmd->add_option("--out", est_out)->required();

  std::string est, mix_path, ref;
  auto* eval_cmd = app.add_subcommand("eval", "SI-SDR/SDR and improvements");
  eval_cmd->add_option("--est", est)->required();
  eval_cmd->add_option("--mix", mix_path)->required();
  eval_cmd->add_option("--ref", ref)->required();

  std::uint64_t grad_seed = 0;
  double eps = kDefaultGradEps;
  auto* grad_cmd =
      app.add_subcommand("gradcheck", "Verify analytic gradients");
  grad_cmd->add_option("--seed", grad_seed);
  grad_cmd->add_option("--eps", eps);

  std::string inspect_model;
  auto* inspect_cmd = app.add_subcommand("inspect", "Describe a model file");
  inspect_cmd->add_option("--model", inspect_model)->required();

  std::string dir, manifest_out;
  std::uint64_t manifest_seed = 0;
  std::size_t count = 1;
  double sir_min = 0.0, sir_max = 0.0;
  auto* manifest_cmd =
      app.add_subcommand("manifest", "Pair speaker files into mixtures");
  manifest_cmd->add_option("--dir", dir)->required();
  manifest_cmd->add_option("--seed", manifest_seed);
  manifest_cmd->add_option("--count", count);
  manifest_cmd->add_option("--sir-min", sir_min);
  manifest_cmd->add_option("--sir-max", sir_max);
  manifest_cmd->add_option("--out", manifest_out)->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    app.exit(e, err, err);
    return kExitValidation;
  }

  try {
    if (*mix_cmd) return do_mix(mix_args, out);
    if (*init_cmd) return do_init(arch, init_seed, model_out, out);
    if (*extract_cmd) return do_extract(model, mixture, enroll, est_out, out);
    if (*eval_cmd) return do_eval(est, mix_path, ref, out);
    if (*grad_cmd) return do_gradcheck(grad_seed, eps, out);
    if (*inspect_cmd) return do_inspect(inspect_model, out);
    if (*manifest_cmd)
      return do_manifest(dir, manifest_seed, count, sir_min, sir_max,
                         manifest_out, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitFailure;
}

}  // namespace cienet::cli
