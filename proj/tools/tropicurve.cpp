// Command line front end.
//
// Subcommands:
//   trop FILE     tropicalize the curve cut out by a polynomial system
//   mult FILE RAY multiplicity of one ray direction
//   degree FILE   numeric degree from random hyperplane sections
//   check FILE    balancing and degree consistency of a curve json
//   oracle FILE   Newton polygon reference answer for one plane curve
//   push C M      image of a curve json under an integer matrix
//   plot FILE     svg rendering of a planar curve json
//
// Exit status: 0 on success (complete / valid / determinate), 2 when the
// result could not be certified, 1 on errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "tropicurve/json_io.hpp"
#include "tropicurve/multiplicity.hpp"
#include "tropicurve/parser.hpp"
#include "tropicurve/pipeline.hpp"
#include "tropicurve/svg.hpp"
#include "tropicurve/tropfan.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

trop::PolynomialSystem load_system(const std::string& path) {
  return trop::parse_system(slurp(path));
}

trop::PolynomialSystem squared(const trop::PolynomialSystem& sys,
                               std::uint64_t seed) {
  const int n = sys.num_vars;
  if (n < 2) throw std::runtime_error("need at least 2 variables");
  if (sys.size() < n - 1) throw std::runtime_error("underdetermined system");
  if (sys.size() == n - 1) return sys;
  return trop::square_up(sys, n - 1, trop::derive_seed(seed, 0x5c0b));
}

void print_human(const trop::RunReport& rep) {
  std::cout << "rays (" << rep.curve.rays.size() << "):\n";
  for (const auto& r : rep.curve.rays) {
    std::cout << "  (";
    for (std::size_t i = 0; i < r.direction.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << r.direction[i];
    }
    std::cout << ")  multiplicity " << r.multiplicity << "\n";
  }
  std::cout << "numeric degree:  " << rep.numeric_deg << "\n";
  std::cout << "tropical degree: ";
  if (rep.trop_deg) std::cout << *rep.trop_deg;
  else std::cout << "-";
  std::cout << "\n";
  std::cout << "balanced: " << (rep.balanced ? "yes" : "no") << "\n";
  std::cout << "defect:   " << rep.defect << "\n";
  std::cout << "complete: " << (rep.complete ? "yes" : "no") << " ("
            << rep.rounds_used << " round"
            << (rep.rounds_used == 1 ? "" : "s") << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropicalization of curves in the torus"};
  app.require_subcommand(1);

  trop::Config cfg;
  std::string config_path;

  std::string trop_file, svg_path;
  bool as_json = false;
  auto* cmd_trop = app.add_subcommand("trop", "tropicalize a curve");
  cmd_trop->add_option("file", trop_file, "polynomial system")->required();
  auto* opt_seed = cmd_trop->add_option("--seed", cfg.seed, "random seed");
  auto* opt_rounds =
      cmd_trop->add_option("--rounds", cfg.max_rounds, "max slicing rounds");
  auto* opt_c1 = cmd_trop->add_option("--log-c1", cfg.log_c1, "first slice level");
  auto* opt_c2 = cmd_trop->add_option("--log-c2", cfg.log_c2, "second slice level");
  auto* opt_eps = cmd_trop->add_option("--eps", cfg.epsilon, "leg junction");
  auto* opt_a0 = cmd_trop->add_option("--a0", cfg.a0_modulus, "start modulus");
  auto* opt_threads = cmd_trop->add_option("--threads", cfg.threads, "path threads");
  cmd_trop->add_flag("--json", as_json, "emit the json report");
  cmd_trop->add_option("--svg", svg_path, "write an svg rendering (planar only)");
  cmd_trop->add_option("--config", config_path, "json config file");

  std::string mult_file, mult_ray;
  std::uint64_t mult_seed = cfg.seed;
  int mult_threads = 1;
  bool mult_json = false;
  auto* cmd_mult = app.add_subcommand("mult", "multiplicity of one direction");
  cmd_mult->add_option("file", mult_file, "polynomial system")->required();
  cmd_mult->add_option("ray", mult_ray, "integer direction, e.g. \"2,3\"")
      ->required();
  cmd_mult->add_option("--seed", mult_seed, "random seed");
  cmd_mult->add_option("--threads", mult_threads, "path threads");
  cmd_mult->add_flag("--json", mult_json, "emit json");

  std::string deg_file;
  std::uint64_t deg_seed = cfg.seed;
  int deg_threads = 1;
  auto* cmd_deg = app.add_subcommand("degree", "numeric degree of the curve");
  cmd_deg->add_option("file", deg_file, "polynomial system")->required();
  cmd_deg->add_option("--seed", deg_seed, "random seed");
  cmd_deg->add_option("--threads", deg_threads, "path threads");

  std::string check_file;
  auto* cmd_check = app.add_subcommand("check", "validate a curve json");
  cmd_check->add_option("file", check_file, "curve json")->required();

  std::string oracle_file;
  auto* cmd_oracle =
      app.add_subcommand("oracle", "Newton polygon answer for a plane curve");
  cmd_oracle->add_option("file", oracle_file, "one plane curve")->required();

  std::string push_curve, push_matrix;
  bool drop_contracted = false;
  auto* cmd_push = app.add_subcommand("push", "pushforward along a matrix");
  cmd_push->add_option("curve", push_curve, "curve json")->required();
  cmd_push->add_option("matrix", push_matrix, "integer matrix file")->required();
  cmd_push->add_flag("--drop-contracted", drop_contracted,
                     "skip rays the matrix sends to zero");

  std::string plot_curve, plot_out;
  auto* cmd_plot = app.add_subcommand("plot", "svg rendering of a planar curve");
  cmd_plot->add_option("curve", plot_curve, "curve json")->required();
  cmd_plot->add_option("-o,--out", plot_out, "output file (stdout if absent)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_trop->parsed()) {
      if (!config_path.empty()) {
        trop::Config file_cfg;
        trop::config_from_json(
            trop::OrderedJson::parse(slurp(config_path)), file_cfg);
        // explicit flags win over the config file
        if (!opt_seed->count()) cfg.seed = file_cfg.seed;
        if (!opt_rounds->count()) cfg.max_rounds = file_cfg.max_rounds;
        if (!opt_c1->count()) cfg.log_c1 = file_cfg.log_c1;
        if (!opt_c2->count()) cfg.log_c2 = file_cfg.log_c2;
        if (!opt_eps->count()) cfg.epsilon = file_cfg.epsilon;
        if (!opt_a0->count()) cfg.a0_modulus = file_cfg.a0_modulus;
        if (!opt_threads->count()) cfg.threads = file_cfg.threads;
      }
      const trop::RunReport rep = trop::tropicalize(load_system(trop_file), cfg);
      if (as_json)
        std::cout << trop::report_to_json(rep).dump(2) << "\n";
      else
        print_human(rep);
      if (!svg_path.empty()) write_file(svg_path, trop::curve_to_svg(rep.curve));
      return rep.complete ? 0 : 2;
    }

    if (cmd_mult->parsed()) {
      const trop::PolynomialSystem F = squared(load_system(mult_file), mult_seed);
      trop::ExponentVector w = trop::parse_int_vector(mult_ray);
      if (trop::is_zero_vector(w)) throw std::runtime_error("zero direction");
      w = trop::primitive(w);
      const trop::MultResult mr =
          trop::ray_multiplicity(F, w, mult_seed, {}, mult_threads);
      const bool ok = mr.status == trop::MultStatus::Determinate;
      if (mult_json) {
        trop::OrderedJson j;
        j["direction"] = w;
        j["multiplicity"] = mr.multiplicity;
        j["status"] = ok ? "determinate" : "indeterminate";
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "direction (";
        for (std::size_t i = 0; i < w.size(); ++i) {
          if (i) std::cout << ",";
          std::cout << w[i];
        }
        std::cout << "): multiplicity " << mr.multiplicity
                  << (ok ? "" : " (indeterminate)") << "\n";
      }
      return ok ? 0 : 2;
    }

    if (cmd_deg->parsed()) {
      const trop::PolynomialSystem F = squared(load_system(deg_file), deg_seed);
      std::cout << trop::numeric_degree(F, deg_seed, {}, deg_threads) << "\n";
      return 0;
    }

    if (cmd_check->parsed()) {
      const trop::TropicalCurve c =
          trop::curve_from_json(trop::OrderedJson::parse(slurp(check_file)));
      const auto sum = trop::balancing_sum(c);
      const bool balanced = trop::is_zero_vector(sum);
      const auto d = trop::tropical_degree(c);
      std::cout << "balanced: " << (balanced ? "yes" : "no") << "\n";
      std::cout << "degree:   ";
      if (d) std::cout << *d;
      else std::cout << "- (lifted sum not uniform)";
      std::cout << "\n";
      return (balanced && d) ? 0 : 2;
    }

    if (cmd_oracle->parsed()) {
      const trop::PolynomialSystem sys = load_system(oracle_file);
      if (sys.num_vars != 2 || sys.size() != 1)
        throw std::runtime_error("oracle needs one polynomial in two variables");
      const trop::TropicalCurve c = trop::plane_curve_oracle(sys.polys[0]);
      std::cout << trop::curve_to_json(c).dump(2) << "\n";
      return 0;
    }

    if (cmd_push->parsed()) {
      const trop::TropicalCurve c =
          trop::curve_from_json(trop::OrderedJson::parse(slurp(push_curve)));
      const auto A = trop::parse_int_matrix(slurp(push_matrix));
      const trop::TropicalCurve img = trop::pushforward(c, A, drop_contracted);
      trop::OrderedJson j = trop::curve_to_json(img);
      if (img.n == 2) {
        trop::OrderedJson slopes = trop::OrderedJson::array();
        for (const auto& s : trop::boundary_slopes(img)) slopes.push_back(s.str());
        j["slopes"] = std::move(slopes);
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (cmd_plot->parsed()) {
      const trop::TropicalCurve c =
          trop::curve_from_json(trop::OrderedJson::parse(slurp(plot_curve)));
      const std::string svg = trop::curve_to_svg(c);
      if (plot_out.empty()) std::cout << svg;
      else write_file(plot_out, svg);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
