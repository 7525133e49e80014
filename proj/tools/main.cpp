#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <chirality/io.hpp>

#include "svg.hpp"

namespace {

using nlohmann::json;
using namespace chiral;

enum ExitCode { kYes = 0, kNo = 1, kUnknown = 2, kError = 3 };

struct Common {
  std::string input;
  std::string mode;
  std::string output;
};

void add_input(CLI::App* cmd, Common& c) {
  cmd->add_option("-i,--input", c.input, "point-pair JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--mode", c.mode, "arithmetic override")->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("-o,--output", c.output, "write the report here instead of stdout");
}

InputDocument load(const Common& c) {
  InputDocument doc = read_input_file(c.input);
  if (!c.mode.empty()) doc.mode = c.mode == "float" ? ArithmeticMode::kFloat : ArithmeticMode::kExact;
  set_arithmetic_mode(doc.mode);
  return doc;
}

void emit(const Common& c, const std::string& command, json result, std::chrono::steady_clock::time_point start) {
  json report{{"schema", kReportSchema},
              {"command", command},
              {"mode", arithmetic_mode() == ArithmeticMode::kExact ? "exact" : "float"},
              {"result", std::move(result)},
              {"timing_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()}};
  if (!c.input.empty()) report["input"] = c.input;
  const std::string text = report.dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.output);
    if (!f) throw InvalidInput("cannot write " + c.output);
    f << text;
  }
}

int exit_for(Status s) {
  switch (s) {
    case Status::kYes:
      return kYes;
    case Status::kNo:
      return kNo;
    case Status::kUnknown:
      return kUnknown;
  }
  return kError;
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_json_exact(buf.str());
}

// Accepts a bare reconstruction or a decide report carrying one.
json find_reconstruction(const json& doc) {
  if (doc.contains("first")) return doc;
  if (doc.contains("result") && doc["result"].contains("witness") && doc["result"]["witness"].contains("reconstruction"))
    return doc["result"]["witness"]["reconstruction"];
  throw InvalidInput("no reconstruction found in file");
}

int run(int argc, char** argv) {
  CLI::App app{"Exact chirality decisions for two-view point pairs"};
  app.require_subcommand(1);
  const auto start = std::chrono::steady_clock::now();
  int code = kYes;

  Common decide_opts;
  bool witness = false;
  int budget = 50;
  auto* decide_cmd = app.add_subcommand("decide", "decide whether a chiral reconstruction exists");
  add_input(decide_cmd, decide_opts);
  decide_cmd->add_flag("--witness", witness, "search for and emit a witness reconstruction");
  decide_cmd->add_option("--budget", budget, "witness search effort")->check(CLI::PositiveNumber);
  decide_cmd->callback([&] {
    InputDocument doc = load(decide_opts);
    DecideOptions options;
    options.want_witness = witness;
    options.budget = budget;
    Decision d = decide(doc.pairs, options);
    json result = to_json(d, witness);
    result["k"] = doc.pairs.size();
    emit(decide_opts, "decide", result, start);
    code = exit_for(d.status);
  });

  Common corners_opts;
  auto* corners_cmd = app.add_subcommand("corners", "corner sign tests for five pairs");
  add_input(corners_cmd, corners_opts);
  corners_cmd->callback([&] {
    InputDocument doc = load(corners_opts);
    GenericityReport gen = genericity_check(doc.pairs);
    json rows = json::array();
    for (const CornerReport& c : all_corner_tests(doc.pairs)) rows.push_back(to_json(c));
    json result{{"generic", gen.passed}, {"corners", rows}};
    if (!gen.passed) result["genericity_failure"] = std::string(1, gen.failed_condition) + ": " + gen.detail;
    emit(corners_opts, "corners", result, start);
  });

  Common sixth_opts;
  auto* sixth_cmd = app.add_subcommand("sixth", "sixth point pair of five pairs");
  add_input(sixth_cmd, sixth_opts);
  sixth_cmd->callback([&] {
    InputDocument doc = load(sixth_opts);
    emit(sixth_opts, "sixth", to_json(sixth_point_pair(doc.pairs)), start);
  });

  Common lines_opts;
  auto* lines_cmd = app.add_subcommand("lines", "27 lines and the double six of the epipolar cubic");
  add_input(lines_cmd, lines_opts);
  lines_cmd->callback([&] {
    InputDocument doc = load(lines_opts);
    DeterminantalRep rep = determinantal_rep(doc.pairs);
    json basis = json::array();
    for (const Mat3& m : rep.basis()) basis.push_back(to_json(m));
    json result = to_json(schlafli_verify(doc.pairs));
    result["basis"] = basis;
    emit(lines_opts, "lines", result, start);
  });

  Common region_opts;
  std::string svg_path;
  int cells = 48;
  auto* region_cmd = app.add_subcommand("region", "boundary of the chiral region of epipoles");
  add_input(region_cmd, region_opts);
  region_cmd->add_option("--svg", svg_path, "write a figure of both images");
  region_cmd->add_option("--cells", cells, "shading resolution of the figure")->check(CLI::Range(4, 400));
  region_cmd->callback([&] {
    InputDocument doc = load(region_opts);
    RegionReport rep = region_boundary_report(doc.pairs);
    if (!svg_path.empty()) {
      std::ofstream f(svg_path);
      if (!f) throw InvalidInput("cannot write " + svg_path);
      f << tools::region_svg(doc.pairs, rep, cells);
    }
    emit(region_opts, "region", to_json(rep), start);
  });

  Common census_opts;
  SampleConfig cfg;
  std::string grid = "0:8";
  std::string generator = "grid";
  auto* census_cmd = app.add_subcommand("census", "decide many random instances");
  census_cmd->add_option("--n", cfg.n, "sample count");
  census_cmd->add_option("--seed", cfg.seed, "stream seed");
  census_cmd->add_option("--grid", grid, "coordinate range LO:HI (or HI for 0:HI)");
  census_cmd->add_option("--generator", generator, "sample generator")->check(CLI::IsMember({"grid", "rational"}));
  census_cmd->add_option("--denominator", cfg.denominator_bound, "largest denominator for --generator rational")
      ->check(CLI::PositiveNumber);
  census_cmd->add_option("--k", cfg.k, "pairs per sample")->check(CLI::Range(1, 12));
  census_cmd->add_option("--threads", cfg.threads, "worker threads (capped by CHIRALITY_THREADS)");
  census_cmd->add_flag("--witness", cfg.want_witness, "also search for witnesses");
  census_cmd->add_option("-o,--output", census_opts.output, "write the report here instead of stdout");
  census_cmd->callback([&] {
    if (auto colon = grid.find(':'); colon != std::string::npos) {
      cfg.grid_lo = std::stoi(grid.substr(0, colon));
      cfg.grid_hi = std::stoi(grid.substr(colon + 1));
    } else {
      cfg.grid_lo = 0;
      cfg.grid_hi = std::stoi(grid);
    }
    cfg.generator = generator == "grid" ? Generator::kIntegerGrid : Generator::kRationalUniform;
    json result = to_json(census_run(cfg));
    result["config"] = {{"n", cfg.n}, {"seed", cfg.seed}, {"grid", {cfg.grid_lo, cfg.grid_hi}}, {"generator", generator}, {"k", cfg.k}};
    emit(census_opts, "census", result, start);
  });

  Common perturb_opts;
  std::string radius = "1/1000";
  std::size_t trials = 200;
  std::uint64_t perturb_seed = 1;
  auto* perturb_cmd = app.add_subcommand("perturb", "stability of the decision under small perturbations");
  add_input(perturb_cmd, perturb_opts);
  perturb_cmd->add_option("--radius", radius, "largest coordinate change");
  perturb_cmd->add_option("--trials", trials, "number of perturbed instances");
  perturb_cmd->add_option("--seed", perturb_seed, "stream seed");
  perturb_cmd->callback([&] {
    InputDocument doc = load(perturb_opts);
    emit(perturb_opts, "perturb", to_json(perturbation_probe(doc.pairs, Scalar::parse(radius), trials, perturb_seed)), start);
  });

  Common verify_opts;
  std::string reconstruction_path;
  std::string pairs_path;
  auto* verify_cmd = app.add_subcommand("verify", "check a reconstruction for chirality");
  verify_cmd->add_option("-r,--reconstruction", reconstruction_path, "reconstruction or decide report JSON")
      ->required()
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("-i,--input", pairs_path, "point pairs for an exact reprojection check")->check(CLI::ExistingFile);
  verify_cmd->add_option("-o,--output", verify_opts.output, "write the report here instead of stdout");
  verify_cmd->callback([&] {
    Reconstruction r = reconstruction_from_json(find_reconstruction(read_json_file(reconstruction_path)));
    ChiralCertificate cert = verify_chiral(r);
    json result = to_json(cert);
    bool ok = cert.passed;
    if (!pairs_path.empty()) {
      PairSet pairs = read_input_file(pairs_path).pairs;
      if (r.w1.size() != r.points.size() || r.w2.size() != r.points.size()) {
        r.w1.clear();
        r.w2.clear();
        for (std::size_t i = 0; i < r.points.size() && i < pairs.size(); ++i) {
          Vec3 a = r.first.project(r.points[i]), b = r.second.project(r.points[i]);
          r.w1.push_back(a[2] / pairs.u(i)[2]);
          r.w2.push_back(b[2] / pairs.v(i)[2]);
        }
      }
      bool reproj = reprojection_exact(r, pairs);
      result["reprojection_exact"] = reproj;
      ok = ok && reproj;
    }
    emit(verify_opts, "verify", result, start);
    code = ok ? kYes : kNo;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const chiral::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
