#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>

#include "stella/basis_family.hpp"
#include "stella/errors.hpp"
#include "stella/geometry_export.hpp"
#include "stella/hermitian_core.hpp"
#include "stella/separability.hpp"

namespace stella::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct AlphaFlags {
  std::optional<double> radians;
  std::optional<double> fraction;

  void attach(CLI::App* cmd) {
    auto* r = cmd->add_option("--alpha", radians, "Basis angle in radians, 0 <= alpha <= pi/4");
    auto* f = cmd->add_option("--alpha-frac", fraction, "Basis angle as a fraction of pi/4");
    r->excludes(f);
  }

  Alpha resolve(const char* command) const {
    if (radians) return Alpha(*radians);
    if (fraction) return Alpha::from_quarter_pi_fraction(*fraction);
    throw ValidationError(std::string(command) + ": one of --alpha or --alpha-frac is required");
  }
};

/// Opens `path` for writing, or forwards to `fallback` for "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
      if (!*file_) throw IoError("cannot open " + path + " for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

double default_eps() {
  if (const char* env = std::getenv("SEP_EPS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string("SEP_EPS: not a positive number: ") + env);
    }
    return v;
  }
  return kDefaultBoundaryEps;
}

int label_exit(Label l) {
  switch (l) {
    case Label::Separable:
      return kSeparable;
    case Label::Entangled:
      return kEntangled;
    case Label::Boundary:
      return kBoundary;
  }
  return kSoftware;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separability geometry of two-qubit basis-family mixtures"};
  app.name("stella");
  app.require_subcommand(1);

  Tolerances tol;
  app.add_option("--hermitian-tol", tol.hermitian, "Hermiticity tolerance")->capture_default_str();
  app.add_option("--psd-tol", tol.psd, "Smallest admissible eigenvalue is -psd-tol")->capture_default_str();

  std::function<int()> action;
  std::optional<double> eps_flag;
  auto eps = [&]() {
    const double e = eps_flag ? *eps_flag : default_eps();
    if (!(e > 0.0)) throw ValidationError("--eps must be positive");
    return e;
  };

  // classify -------------------------------------------------------------------
  auto* classify_cmd = app.add_subcommand("classify", "Classify one mixture (exit 0 separable, 1 entangled, 2 boundary)");
  AlphaFlags classify_alpha;
  classify_alpha.attach(classify_cmd);
  std::vector<double> weights;
  bool classify_json = false;
  double fixed_tol = 1e-12;
  classify_cmd->add_option("--weights", weights, "w1,w2,w3,w4")->delimiter(',')->expected(4)->required();
  classify_cmd->add_option("--eps", eps_flag, "Boundary band on the factors (default 1e-9, env SEP_EPS)");
  classify_cmd->add_option("--fixed-tol", fixed_tol, "Tolerance on |x - y| for the fixed-point flag")->capture_default_str();
  classify_cmd->add_flag("--json", classify_json, "Emit a JSON document");
  classify_cmd->callback([&] {
    action = [&]() {
      const Alpha alpha = classify_alpha.resolve("classify");
      const auto w = SimplexWeights::make({weights[0], weights[1], weights[2], weights[3]});
      mixture(w, alpha, tol);
      const Classification c = classify(w, alpha, eps());
      const CartesianPoint p = weights_to_point(w);
      const bool fixed = is_fixed_point(w, alpha, fixed_tol);
      if (classify_json) {
        ordered_json j;
        j["label"] = to_string(c.label);
        j["f1"] = c.factors.f1;
        j["f2"] = c.factors.f2;
        j["det"] = c.factors.product();
        j["min_eig"] = c.witness;
        j["point"] = {{"x", p.x}, {"y", p.y}, {"z", p.z}};
        j["fixed_point"] = fixed;
        out << j.dump() << '\n';
      } else {
        out << "label        " << to_string(c.label) << '\n'
            << "f1           " << format_number(c.factors.f1) << '\n'
            << "f2           " << format_number(c.factors.f2) << '\n'
            << "det          " << format_number(c.factors.product()) << '\n'
            << "min_eig      " << format_number(c.witness) << '\n'
            << "point        " << format_number(p.x) << ' ' << format_number(p.y) << ' ' << format_number(p.z) << '\n'
            << "fixed_point  " << (fixed ? "true" : "false") << '\n';
      }
      return label_exit(c.label);
    };
  });

  // volume ---------------------------------------------------------------------
  auto* volume_cmd = app.add_subcommand("volume", "Monte Carlo fraction of separable mixtures");
  AlphaFlags volume_alpha;
  volume_alpha.attach(volume_cmd);
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool volume_json = false;
  volume_cmd->add_option("--samples", samples, "Number of uniform simplex samples")->capture_default_str()->check(CLI::PositiveNumber);
  volume_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  volume_cmd->add_option("--threads", threads, "Worker threads (0 = all cores; result does not depend on it)");
  volume_cmd->add_option("--eps", eps_flag, "Boundary band on the factors");
  volume_cmd->add_flag("--json", volume_json, "Emit a JSON document");
  volume_cmd->callback([&] {
    action = [&]() {
      const Alpha alpha = volume_alpha.resolve("volume");
      const VolumeEstimate est = separable_volume_fraction(alpha, samples, seed, eps(), threads);
      if (volume_json) {
        ordered_json j;
        j["alpha"] = alpha.value();
        j["fraction"] = est.fraction;
        j["stderr"] = est.std_error;
        j["samples"] = est.samples;
        j["seed"] = est.seed;
        out << j.dump() << '\n';
      } else {
        out << "alpha     " << format_number(alpha.value()) << '\n'
            << "fraction  " << format_number(est.fraction) << '\n'
            << "stderr    " << format_number(est.std_error) << '\n'
            << "samples   " << est.samples << '\n'
            << "seed      " << est.seed << '\n';
      }
      return 0;
    };
  });

  // sweep ----------------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "Separable fraction and basis entropy over evenly spaced alpha");
  std::uint32_t alpha_steps = 9;
  std::uint64_t sweep_samples = 100000;
  std::uint64_t sweep_seed = 0;
  std::string sweep_out = "-";
  bool bits = false;
  sweep_cmd->add_option("--alpha-steps", alpha_steps, "Number of alpha values in [0, pi/4]")->capture_default_str()->check(CLI::Range(2u, 1000000u));
  sweep_cmd->add_option("--samples", sweep_samples, "Samples per alpha")->capture_default_str()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep_seed, "Random seed (shared by all alpha)")->capture_default_str();
  sweep_cmd->add_option("--threads", threads, "Worker threads");
  sweep_cmd->add_option("--eps", eps_flag, "Boundary band on the factors");
  sweep_cmd->add_option("--out", sweep_out, "CSV path, '-' for stdout")->capture_default_str();
  sweep_cmd->add_flag("--bits", bits, "Report entropy in bits instead of nats");
  sweep_cmd->callback([&] {
    action = [&]() {
      const double e = eps();
      Sink sink(sweep_out, out);
      auto& os = sink.stream();
      os << "alpha,fraction,stderr,entropy\n";
      for (std::uint32_t i = 0; i < alpha_steps; ++i) {
        const Alpha alpha = Alpha::from_quarter_pi_fraction(static_cast<double>(i) / (alpha_steps - 1));
        const VolumeEstimate est = separable_volume_fraction(alpha, sweep_samples, sweep_seed, e, threads);
        double entropy = basis_entanglement(alpha);
        if (bits) entropy /= std::numbers::ln2;
        os << format_number(alpha.value()) << ',' << format_number(est.fraction) << ',' << format_number(est.std_error)
           << ',' << format_number(entropy) << '\n';
      }
      os.flush();
      if (!os) throw IoError("sweep: write failed");
      return 0;
    };
  });

  // mesh -----------------------------------------------------------------------
  auto* mesh_cmd = app.add_subcommand("mesh", "Export a surface mesh as OBJ");
  AlphaFlags mesh_alpha;
  mesh_alpha.attach(mesh_cmd);
  std::string what;
  std::uint32_t resolution = 64;
  std::uint32_t height_segments = 8;
  bool clip = false;
  std::string mesh_out = "-";
  mesh_cmd->add_option("--what", what, "Surface to export")
      ->required()
      ->check(CLI::IsMember({"tetra", "coneA", "coneB", "stella", "octahedron"}));
  mesh_cmd->add_option("--resolution", resolution, "Radial segments for cones")->capture_default_str()->check(CLI::Range(3u, 1000000u));
  mesh_cmd->add_option("--height-segments", height_segments, "Height segments for cones")->capture_default_str()->check(CLI::Range(1u, 1000000u));
  mesh_cmd->add_flag("--clip", clip, "Cut cone rulings at the tetrahedron boundary");
  mesh_cmd->add_option("--out", mesh_out, "OBJ path, '-' for stdout")->capture_default_str();
  mesh_cmd->callback([&] {
    action = [&]() {
      SurfaceMesh mesh;
      if (what == "tetra") {
        mesh = tetrahedron_mesh();
      } else if (what == "stella") {
        mesh = stella_octangula_mesh();
      } else if (what == "octahedron") {
        mesh = octahedron_mesh();
      } else {
        const Alpha alpha = mesh_alpha.resolve("mesh");
        const ConeId which = what == "coneA" ? ConeId::A : ConeId::B;
        if (cone_specs(alpha).degenerate()) {
          err << "warning: cones are degenerate at alpha = " << format_number(alpha.value())
              << "; writing the limiting planes\n";
        }
        mesh = cone_mesh(alpha, which, resolution, height_segments, clip);
      }
      Sink sink(mesh_out, out);
      write_obj(mesh, sink.stream());
      return 0;
    };
  });

  // grid -----------------------------------------------------------------------
  auto* grid_cmd = app.add_subcommand("grid", "Classify a barycentric lattice and write CSV");
  AlphaFlags grid_alpha;
  grid_alpha.attach(grid_cmd);
  std::uint32_t grid_resolution = 20;
  std::string grid_out = "-";
  grid_cmd->add_option("--resolution", grid_resolution, "Lattice subdivisions per edge")->capture_default_str()->check(CLI::Range(2u, 100000u));
  grid_cmd->add_option("--eps", eps_flag, "Boundary band on the factors");
  grid_cmd->add_option("--out", grid_out, "CSV path, '-' for stdout")->capture_default_str();
  grid_cmd->callback([&] {
    action = [&]() {
      const Alpha alpha = grid_alpha.resolve("grid");
      const ClassifiedCloud cloud = classification_grid(alpha, grid_resolution, eps());
      Sink sink(grid_out, out);
      write_csv(cloud, sink.stream());
      return 0;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    return action();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConsistencyError& e) {
    err << "internal error: " << e.what() << '\n';
    return kSoftware;
  }
}

}  // namespace stella::cli
