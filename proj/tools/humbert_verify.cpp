// humbert-verify: batch driver exposing every verification as a subcommand
// with machine-readable reports. Exit codes: 0 = all pass, 1 = verification
// failure, 2 = usage or resource error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "humbert/checks.hpp"
#include "humbert/correspondences.hpp"
#include "humbert/mck.hpp"
#include "humbert/model.hpp"
#include "humbert/report.hpp"
#include "humbert/taut.hpp"

namespace {

using humbert::CheckReport;
using humbert::Json;

struct Options {
  std::string format = "text";
  std::string out_path;
  std::string config_path;
  int trials = 1000;
  std::uint64_t seed = 12345;
  std::string lambdas = "0,1,2,3,4";
  int b = 10;
  int m = 2;
  int codim_max = -1;
  int n = 4;
  bool expansion = false;
  bool refined = false;
  bool exact = false;
  bool randomized = false;
};

std::vector<std::string> split_csv_list(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream stream(text);
  while (std::getline(stream, token, ',')) out.push_back(token);
  return out;
}

void apply_config(const CLI::App& app, Options& opt) {
  if (opt.config_path.empty()) return;
  std::ifstream in(opt.config_path);
  if (!in) throw humbert::UsageError("cannot open config file: " + opt.config_path);
  Json cfg = Json::parse(in);
  auto unset = [&](const std::string& flag) {
    if (const CLI::Option* o = app.get_option_no_throw(flag);
        o != nullptr && o->count() > 0)
      return false;
    for (const CLI::App* sub : app.get_subcommands()) {
      if (const CLI::Option* o = sub->get_option_no_throw(flag);
          o != nullptr && o->count() > 0)
        return false;
    }
    return true;
  };
  if (cfg.contains("format") && unset("--format"))
    opt.format = cfg["format"].get<std::string>();
  if (cfg.contains("out") && unset("--out"))
    opt.out_path = cfg["out"].get<std::string>();
  if (cfg.contains("seed") && unset("--seed"))
    opt.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("trials") && unset("--trials"))
    opt.trials = cfg["trials"].get<int>();
  if (cfg.contains("b")) opt.b = cfg["b"].get<int>();
  if (cfg.contains("lambdas")) {
    std::string joined;
    for (const auto& v : cfg["lambdas"]) {
      if (!joined.empty()) joined += ',';
      joined += v.is_string() ? v.get<std::string>() : v.dump();
    }
    opt.lambdas = joined;
  }
}

int emit(const Options& opt, const std::vector<CheckReport>& reports,
         const std::optional<std::string>& csv_table) {
  std::string payload;
  if (opt.format == "json") {
    payload = humbert::report_document(
                  std::span<const CheckReport>(reports.data(), reports.size()))
                  .dump(2);
    payload += '\n';
  } else if (opt.format == "csv") {
    payload = csv_table ? *csv_table
                        : humbert::reports_to_csv(std::span<const CheckReport>(
                              reports.data(), reports.size()));
  } else if (opt.format == "text") {
    payload = humbert::reports_to_text(
        std::span<const CheckReport>(reports.data(), reports.size()));
  } else {
    throw humbert::UsageError("unknown format: " + opt.format);
  }

  if (opt.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw humbert::UsageError("cannot open output file: " + opt.out_path);
    out << payload;
  }

  for (const auto& r : reports)
    if (r.status != humbert::Status::Pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cohomological verification for the genus-5 Humbert model"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", opt.out_path, "write the report to a file");
  app.add_option("--config", opt.config_path,
                 "JSON config mirroring the flags (lambdas, b, seed, trials)");
  app.add_option("--seed", opt.seed, "seed for randomized modes");
  app.add_option("--trials", opt.trials, "trial count for randomized modes");

  CLI::App* verify = app.add_subcommand("verify", "run the full check suite");
  std::string verify_target = "all";
  verify->add_option("target", verify_target, "what to verify (only: all)");

  CLI::App* projectors_cmd =
      app.add_subcommand("projectors", "Chow–Künneth projector suite");
  projectors_cmd->add_flag("--expansion", opt.expansion,
                           "include the 2^5-term expansion table");

  CLI::App* relations_cmd =
      app.add_subcommand("relations", "tautological relation suite");
  relations_cmd->add_option("--m", opt.m, "ambient power (2..4)")->required();

  CLI::App* dims_cmd =
      app.add_subcommand("dims", "graded dimensions and injectivity ranks");
  dims_cmd->add_option("--m", opt.m, "ambient power (1..5)")->required();
  dims_cmd->add_option("--codim-max", opt.codim_max, "truncate the table");

  CLI::App* kimura_cmd =
      app.add_subcommand("kimura", "finite-dimensionality matching sum");
  kimura_cmd->add_option("--b", opt.b, "odd cohomology dimension (2,4,6,10)")
      ->required();
  kimura_cmd->add_flag("--exact", opt.exact, "full expansion mode");
  kimura_cmd->add_flag("--randomized", opt.randomized,
                       "seeded Pfaffian-pairing mode");
  kimura_cmd->add_option("--trials", opt.trials, "trial count");
  kimura_cmd->add_option("--seed", opt.seed, "random seed");

  app.add_subcommand("fp", "Faber–Pandharipande cycle vanishing");
  app.add_subcommand("gamma3", "modified small diagonal vanishing");

  CLI::App* mck_cmd = app.add_subcommand("mck", "multiplicativity checks");
  mck_cmd->add_flag("--refined", opt.refined, "include the 343-case table");

  CLI::App* genus_cmd = app.add_subcommand("genus", "genus of a type-n curve");
  genus_cmd->add_option("--n", opt.n, "family type (n >= 2)")->required();

  CLI::App* params_cmd =
      app.add_subcommand("params", "validate family parameters");
  params_cmd
      ->add_option("--lambdas", opt.lambdas,
                   "comma-separated list of 5 rationals or tags")
      ->required();

  // global flags may appear after the subcommand
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
    apply_config(app, opt);

    const humbert::HumbertModel model = humbert::HumbertModel::standard();
    std::vector<CheckReport> reports;
    std::optional<std::string> csv_table;

    if (app.got_subcommand(verify)) {
      if (verify_target != "all")
        throw humbert::UsageError("unknown verify target: " + verify_target);
      humbert::VerifyOptions vo;
      vo.trials = opt.trials;
      vo.seed = opt.seed;
      vo.lambdas = split_csv_list(opt.lambdas);
      reports = humbert::run_verify_all(vo);
    } else if (app.got_subcommand(projectors_cmd)) {
      reports.push_back(humbert::check_projector_suite(model));
      if (opt.expansion) {
        reports.push_back(humbert::check_expansion(model));
        const auto terms = humbert::expansion_terms(model);
        csv_table = humbert::expansion_csv(terms);
      }
    } else if (app.got_subcommand(relations_cmd)) {
      reports.push_back(humbert::check_relations(model, opt.m));
    } else if (app.got_subcommand(dims_cmd)) {
      const auto rows = humbert::graded_dims(opt.m, opt.codim_max);
      const auto normal_forms = humbert::normal_form_monomials(opt.m);
      CheckReport report = CheckReport::pass("graded-injectivity");
      report.parameters["m"] = opt.m;
      Json table = Json::array();
      std::string csv = "codim,quotient_dim,image_rank,injective\n";
      for (const auto& row : rows) {
        Json entry = Json::object();
        entry["codim"] = row.codim;
        entry["quotient_dim"] = row.quotient_dim;
        entry["image_rank"] = row.image_rank;
        entry["injective"] = row.injective();
        Json forms = Json::array();
        for (const auto& mono :
             normal_forms[static_cast<std::size_t>(row.codim)])
          forms.push_back(humbert::render(mono));
        entry["normal_forms"] = forms;
        table.push_back(entry);
        csv += std::to_string(row.codim) + "," +
               std::to_string(row.quotient_dim) + "," +
               std::to_string(row.image_rank) + "," +
               (row.injective() ? "1" : "0") + "\n";
        if (!row.injective())
          report.mark_fail("rank drop at codim " + std::to_string(row.codim));
      }
      report.details["table"] = table;
      reports.push_back(std::move(report));
      csv_table = csv;
    } else if (app.got_subcommand(kimura_cmd)) {
      if (opt.exact && opt.randomized)
        throw humbert::UsageError("choose one of --exact / --randomized");
      humbert::KimuraMode mode;
      if (opt.exact)
        mode = humbert::KimuraMode::Exact;
      else if (opt.randomized)
        mode = humbert::KimuraMode::Randomized;
      else
        mode = opt.b == 10 ? humbert::KimuraMode::Randomized
                           : humbert::KimuraMode::Exact;
      reports.push_back(
          humbert::check_kimura_single(opt.b, mode, opt.trials, opt.seed));
    } else if (app.got_subcommand("fp")) {
      reports.push_back(humbert::check_fp());
    } else if (app.got_subcommand("gamma3")) {
      reports.push_back(humbert::check_gamma3());
    } else if (app.got_subcommand(mck_cmd)) {
      reports.push_back(humbert::coarse_mck_all(model));
      if (opt.refined) {
        reports.push_back(humbert::refined_mck(model));
        csv_table = humbert::case_table_csv(humbert::refined_case_table(model));
      }
    } else if (app.got_subcommand(genus_cmd)) {
      CheckReport report = CheckReport::pass("genus");
      report.parameters["n"] = opt.n;
      report.details["value"] = humbert::to_string(humbert::genus(opt.n));
      reports.push_back(std::move(report));
    } else if (app.got_subcommand(params_cmd)) {
      reports.push_back(
          humbert::validate_family_params(split_csv_list(opt.lambdas)));
    }

    return emit(opt, reports, csv_table);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const humbert::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const humbert::BudgetError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const humbert::DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
