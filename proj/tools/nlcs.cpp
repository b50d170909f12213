// nlcs: sweeps, figure presets, state dumps and verification for nonlinear
// charge coherent states.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nlcs/errors.hpp"
#include "nlcs/nonclassicality.hpp"
#include "nlcs/states.hpp"
#include "nlcs/sweep.hpp"
#include "nlcs/verify.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerifyFailed = 2, kNumeric = 3 };

// JSON config: top-level keys are global flags, nested objects are
// subcommands, keys are long flag names without dashes.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return to_json(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("invalid JSON config: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("JSON config must be an object");
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

 private:
  static nlohmann::json to_json(const CLI::App* app, bool default_also) {
    nlohmann::json j = nlohmann::json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string& name = opt->get_lnames()[0];
      if (name == "config" || name == "save-config") continue;
      if (opt->get_type_size() == 0) {
        if (opt->count() > 0 || default_also) j[name] = opt->count() > 0;
      } else if (opt->count() > 0) {
        const auto& r = opt->results();
        if (opt->get_expected_max() > 1) {
          j[name] = r;
        } else {
          j[name] = r.back();
        }
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    for (const CLI::App* sub : app->get_subcommands({}))
      if (sub->parsed()) j[sub->get_name()] = to_json(sub, default_also);
    return j;
  }

  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("unsupported JSON value " + v.dump());
  }

  static void collect(const nlohmann::json& j, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_object()) {
        auto nested = parents;
        nested.push_back(it.key());
        items.push_back({nested, "++", {}});  // a section selects its subcommand
        collect(*it, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_array()) {
        for (const auto& v : *it) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(*it));
      }
      items.push_back(std::move(item));
    }
  }
};

struct ModelFlags {
  std::string name = "unit";
  std::vector<std::string> params;
  std::string spectrum_file;
  int q = 0;
  std::string parity = "full";
  std::size_t max_terms = nlcs::TruncationPolicy{}.max_terms;
  double rel_tol = nlcs::TruncationPolicy{}.rel_tail_tol;
  double radius_guard = nlcs::TruncationPolicy{}.radius_guard;

  void attach(CLI::App* sub) {
    sub->add_option("--model", name, "nonlinearity: unit, poschl_teller, hydrogen, harmonious, dual_harmonious, "
                                      "barut_girardello, gilmore_perelomov, q_deformed, spectrum")
        ->capture_default_str();
    sub->add_option("--param", params, "model parameter key=value (nu, kappa, qbar); repeatable")
        ->allow_extra_args(false);
    sub->add_option("--spectrum-file", spectrum_file, "two-column (n, e_n) file for --model spectrum");
    sub->add_option("--q", q, "charge number")->capture_default_str();
    sub->add_option("--parity", parity, "full, even or odd")->capture_default_str();
    sub->add_option("--max-terms", max_terms, "ladder truncation limit")->capture_default_str();
    sub->add_option("--rel-tol", rel_tol, "relative tail tolerance")->capture_default_str();
    sub->add_option("--radius-guard", radius_guard, "reject x above guard * radius^2")->capture_default_str();
  }

  nlcs::ModelSpec model_spec() const {
    nlcs::ModelSpec spec{name, {}, spectrum_file};
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw nlcs::InvalidParameter("--param expects key=value, got '" + kv + "'");
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(kv.substr(eq + 1), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != kv.size() - eq - 1)
        throw nlcs::InvalidParameter("--param value is not a number: '" + kv + "'");
      spec.params.push_back({kv.substr(0, eq), value});
    }
    return spec;
  }

  nlcs::TruncationPolicy policy() const { return {rel_tol, max_terms, radius_guard}; }
};

std::vector<nlcs::Measure> parse_measures(const std::string& list) {
  std::vector<nlcs::Measure> out;
  if (list.empty() || list == "all") {
    const auto all = nlcs::all_measures();
    return {all.begin(), all.end()};
  }
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(nlcs::parse_measure(item));
  }
  if (out.empty()) throw nlcs::InvalidParameter("--measures is empty");
  return out;
}

// Writes through a temporary buffer so a failed run leaves no partial file.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw nlcs::InvalidParameter("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw nlcs::InvalidParameter("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear charge coherent states: sweeps, figures, state dumps, verification", "nlcs"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file mirroring the command-line flags");
  std::string save_config;
  app.add_option("--save-config", save_config, "write the effective flags as JSON and continue");
  app.require_subcommand(1);

  // sweep
  ModelFlags sweep_model;
  nlcs::GridSpec grid{0.1, 20.0, 200, false};
  std::string sweep_measures = "all";
  std::string sweep_out;
  unsigned threads = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate measures on an x = |xi|^2 grid, CSV out");
  sweep_model.attach(sweep);
  sweep->add_option("--x-min", grid.min, "smallest x")->capture_default_str();
  sweep->add_option("--x-max", grid.max, "largest x")->capture_default_str();
  sweep->add_option("--points", grid.count, "grid points (>= 2)")->capture_default_str();
  sweep->add_flag("--log", grid.log_spacing, "logarithmic spacing");
  sweep->add_option("--measures", sweep_measures, "comma-separated measure names, or all")->capture_default_str();
  sweep->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();
  sweep->add_option("-o,--output", sweep_out, "CSV path (default stdout)");

  // figure
  int figure_id = 1;
  std::string figure_dir = ".";
  CLI::App* figure = app.add_subcommand("figure", "figure preset: per-curve CSV files plus a plot script");
  figure->add_option("--id", figure_id, "preset 1..12")->required();
  figure->add_option("-o,--output", figure_dir, "output directory")->capture_default_str();
  figure->add_option("--threads", threads, "worker threads (0: all cores)");

  // state
  ModelFlags state_model;
  double xi_re = 0.0;
  double xi_im = 0.0;
  std::string state_out;
  CLI::App* state = app.add_subcommand("state", "dump a state's ladder coefficients as CSV");
  state_model.attach(state);
  state->add_option("--xi-re", xi_re, "Re xi")->capture_default_str();
  state->add_option("--xi-im", xi_im, "Im xi")->capture_default_str();
  state->add_option("-o,--output", state_out, "CSV path (default stdout)");

  // verify
  std::string level = "quick";
  double tamper_k0 = 0.0;
  CLI::App* verify = app.add_subcommand("verify", "identity, eigenvalue, oracle and reduction checks");
  verify->add_option("--level", level, "quick or full")->capture_default_str();
  verify->add_option("--tamper-k0", tamper_k0)->group("");

  for (CLI::App* sub : {sweep, figure, state, verify}) sub->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (!save_config.empty()) emit(save_config, app.config_to_str(false, false));

    if (sweep->parsed()) {
      nlcs::SweepSpec spec;
      spec.model = sweep_model.model_spec();
      spec.q = sweep_model.q;
      spec.parity = nlcs::parse_parity(sweep_model.parity);
      spec.grid = grid;
      spec.measures = parse_measures(sweep_measures);
      spec.policy = sweep_model.policy();
      spec.threads = threads;
      std::ostringstream csv;
      nlcs::write_sweep_csv(csv, nlcs::run_sweep(spec));
      emit(sweep_out, csv.str());
    } else if (figure->parsed()) {
      const nlcs::FigurePreset preset = nlcs::figure_preset(figure_id);
      std::filesystem::create_directories(figure_dir);
      const std::filesystem::path dir(figure_dir);
      const std::string stem = "fig" + std::to_string(preset.id);
      for (nlcs::Curve curve : preset.curves) {
        curve.spec.threads = threads;
        std::ostringstream csv;
        nlcs::write_sweep_csv(csv, nlcs::run_sweep(curve.spec));
        const auto path = dir / (stem + "_" + curve.label + ".csv");
        emit(path.string(), csv.str());
        std::cerr << "wrote " << path.string() << '\n';
      }
      const auto script = dir / (stem + ".py");
      emit(script.string(), nlcs::plot_script(preset));
      std::cerr << "wrote " << script.string() << '\n';
    } else if (state->parsed()) {
      const nlcs::NonlinearityModel model = nlcs::make_model(state_model.model_spec());
      const nlcs::ChargeState s = nlcs::build_state({xi_re, xi_im}, state_model.q, model,
                                                    nlcs::parse_parity(state_model.parity), state_model.policy());
      std::ostringstream csv;
      nlcs::write_state_csv(csv, s);
      emit(state_out, csv.str());
    } else if (verify->parsed()) {
      const nlcs::VerifyOptions options{nlcs::parse_verify_level(level), tamper_k0};
      const auto results = nlcs::run_verification(options);
      nlcs::write_report(std::cout, results);
      return nlcs::all_passed(results) ? kOk : kVerifyFailed;
    }
  } catch (const nlcs::NumericFailure& e) {
    std::cerr << "nlcs: numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const nlcs::Error& e) {
    std::cerr << "nlcs: " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "nlcs: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
