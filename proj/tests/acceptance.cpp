// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "stella/basis_family.hpp"
#include "stella/geometry_export.hpp"
#include "stella/hermitian_core.hpp"
#include "stella/separability.hpp"

using namespace stella;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double random_alpha(std::mt19937_64& gen) {
  return std::uniform_real_distribution<double>(0.0, kQuarterPi)(gen);
}

Outcome factorization_identity() {
  std::mt19937_64 gen(101);
  const auto start = Clock::now();
  double worst = 0.0;
  for (int n = 0; n < 100000; ++n) {
    const auto w = SimplexWeights::make(oracle::dirichlet(gen));
    const Alpha a(random_alpha(gen));
    const auto pt = partial_transpose(mixture(w, a).matrix());
    const double product = eigenvalues_hermitian(pt).product();
    worst = std::max(worst, std::abs(boundary_factors(w, a).product() - product));
  }
  const double t = seconds_since(start);
  return {worst <= 1e-12 && t < 10.0, fmt("max error %.3g, %.2f s", worst, t)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 gen(102);
  int disagreements = 0;
  int skipped = 0;
  for (int n = 0; n < 100000; ++n) {
    const auto w = SimplexWeights::make(oracle::dirichlet(gen));
    const Alpha a(random_alpha(gen));
    const auto f = boundary_factors(w, a);
    if (std::abs(f.f1) < 1e-9 || std::abs(f.f2) < 1e-9) {
      ++skipped;
      continue;
    }
    const bool closed_form_ppt = f.f1 > 0 && f.f2 > 0;
    const bool eigen_ppt = eigenvalues_hermitian(partial_transpose(mixture(w, a).matrix())).min() >= 0.0;
    disagreements += closed_form_ppt != eigen_ppt;
  }
  return {disagreements == 0, fmt("%d disagreements, %d in band", disagreements, skipped)};
}

Outcome alpha_zero_totality() {
  std::mt19937_64 gen(103);
  int other = 0;
  for (int n = 0; n < 10000; ++n)
    other += classify(SimplexWeights::make(oracle::dirichlet(gen)), Alpha(0.0)).label != Label::Separable;
  return {other == 0, fmt("%d of 10000 not Separable", other)};
}

Outcome octahedron_ratio() {
  const auto start = Clock::now();
  const auto est = separable_volume_fraction(Alpha(kQuarterPi), 1000000, 7);
  const double t = seconds_since(start);
  return {est.fraction >= 0.494 && est.fraction <= 0.506 && t < 60.0,
          fmt("fraction %.6f +- %.6f, %.2f s", est.fraction, est.std_error, t)};
}

Outcome monotone_shrinkage() {
  std::vector<VolumeEstimate> est;
  std::string detail;
  for (int i = 0; i <= 4; ++i) {
    est.push_back(separable_volume_fraction(Alpha(std::numbers::pi / 16 * i), 1000000, 7));
    detail += fmt("%s%.4f", i ? " " : "", est.back().fraction);
  }
  bool ok = true;
  for (std::size_t i = 1; i < est.size(); ++i) {
    const double sigma = std::hypot(est[i].std_error, est[i - 1].std_error);
    ok &= est[i].fraction <= est[i - 1].fraction + 3 * sigma;
  }
  return {ok, detail};
}

Outcome cone_on_boundary() {
  std::mt19937_64 gen(106);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int bad = 0;
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    // Open interval: the endpoints have planar, not conical, boundaries.
    const Alpha a(kQuarterPi * (0.001 + 0.998 * unit(gen)));
    const auto pair = cone_specs(a);
    const auto& spec = n % 2 ? pair.b : pair.a;
    const double u = 2 * std::numbers::pi * unit(gen);
    const auto rim = cone_point(spec, u, 1.0);
    const auto p = cone_point(spec, u, unit(gen) * ruling_exit(spec.apex, rim));
    const auto w = SimplexWeights::make(point_to_weights(p).w);
    const auto f = boundary_factors(w, a);
    const double det = std::abs(det_pt(w, a));
    worst = std::max(worst, det);
    const int vanishing = (std::abs(f.f1) < 1e-10) + (std::abs(f.f2) < 1e-10);
    bad += !(det < 1e-10 && vanishing == 1);
  }
  return {bad == 0, fmt("%d failures, max |det| %.3g", bad, worst)};
}

Outcome circular_case() {
  const auto pair = cone_specs(Alpha(std::numbers::pi / 8));
  const double da = std::abs(pair.a.coeff_x2 - pair.a.coeff_y2);
  const double db = std::abs(pair.b.coeff_x2 - pair.b.coeff_y2);
  return {da <= 1e-14 && db <= 1e-14, fmt("coefficient gaps %.3g, %.3g", da, db)};
}

Outcome edge_midpoints() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto pair = cone_specs(Alpha(kQuarterPi * i / 19.0));
    for (double sx : {-0.25, 0.25})
      for (double sy : {-0.25, 0.25})
        for (const auto* spec : {&pair.a, &pair.b}) worst = std::max(worst, std::abs(spec->residual({sx, sy, 0.0})));
  }
  return {worst < 1e-14, fmt("max residual %.3g", worst)};
}

double max_entry_gap(const ComplexMatrix4& a, const ComplexMatrix4& b) {
  double m = 0.0;
  for (int i = 0; i < 16; ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

Outcome fixed_plane() {
  std::mt19937_64 gen(109);
  std::uniform_real_distribution<double> box(-0.5, 0.5);
  double worst_on = 0.0;
  int on = 0;
  while (on < 10000) {
    const double x = box(gen);
    const auto cw = point_to_weights({x, x, box(gen)});
    if (!cw.inside) continue;
    const auto rho = mixture(SimplexWeights::make(cw.w), Alpha(random_alpha(gen))).matrix();
    worst_on = std::max(worst_on, max_entry_gap(rho, partial_transpose(rho)));
    ++on;
  }
  int equal_off = 0;
  int off = 0;
  while (off < 10000) {
    const auto w = SimplexWeights::make(oracle::dirichlet(gen));
    const auto p = weights_to_point(w);
    const double a = random_alpha(gen);
    if (std::abs(p.x - p.y) <= 1e-3 || a == 0.0) continue;
    const auto rho = mixture(w, Alpha(a)).matrix();
    equal_off += rho == partial_transpose(rho);
    ++off;
  }
  return {worst_on <= 1e-14 && equal_off == 0, fmt("max gap on plane %.3g, %d equal off plane", worst_on, equal_off)};
}

Outcome reflection_structure() {
  const auto spec = pt_superoperator_spectrum();
  std::mt19937_64 gen(110);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const auto a = oracle::random_hermitian(gen);
    const auto b = oracle::random_hermitian(gen);
    worst = std::max(worst, std::abs(hs_distance(partial_transpose(a), partial_transpose(b)) - hs_distance(a, b)));
  }
  return {spec.plus_dim == 12 && spec.minus_dim == 4 && worst <= 1e-12,
          fmt("+1 x %d, -1 x %d, max HS change %.3g", spec.plus_dim, spec.minus_dim, worst)};
}

Outcome tetrahedron_regularity() {
  const auto v = tetrahedron_vertices();
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    const Alpha a(kQuarterPi * n / 19.0);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        const double euclid = std::hypot(v[i].x - v[j].x, v[i].y - v[j].y, v[i].z - v[j].z);
        const double hs = hs_distance(vertex_projector(a, i), vertex_projector(a, j));
        worst = std::max({worst, std::abs(euclid - 1.0), std::abs(hs - 1.0)});
      }
  }
  return {worst <= 1e-12, fmt("max |d - 1| %.3g", worst)};
}

Outcome equal_entanglement() {
  double spread = 0.0;
  double at_zero = 0.0;
  double at_quarter = 0.0;
  for (int n = 0; n < 20; ++n) {
    const Alpha a(kQuarterPi * n / 19.0);
    std::array<double, 4> s{};
    for (std::size_t i = 0; i < 4; ++i) s[i] = von_neumann_entropy(partial_trace_b(vertex_projector(a, i)));
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    spread = std::max(spread, *hi - *lo);
    if (n == 0) at_zero = s[0];
    if (n == 19) at_quarter = s[0];
  }
  const bool ok = spread <= 1e-12 && std::abs(at_zero) <= 1e-12 && std::abs(at_quarter - std::numbers::ln2) <= 1e-12;
  return {ok, fmt("spread %.3g, S(0) = %.3g, S(pi/4) - ln 2 = %.3g", spread, at_zero, at_quarter - std::numbers::ln2)};
}

Outcome ruled_surface() {
  std::mt19937_64 gen(113);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int r = 0; r < 100; ++r) {
    const Alpha a(kQuarterPi * (0.001 + 0.998 * unit(gen)));
    const auto pair = cone_specs(a);
    const auto& spec = r % 2 ? pair.b : pair.a;
    const double u = 2 * std::numbers::pi * unit(gen);
    const auto rim = cone_point(spec, u, 1.0);
    const double t_max = ruling_exit(spec.apex, rim);
    for (int k = 1; k <= 20; ++k) {
      const auto p = cone_point(spec, u, t_max * k / 21.0);
      worst = std::max(worst, std::abs(det_pt(SimplexWeights::make(point_to_weights(p).w), a)));
    }
  }
  return {worst < 1e-10, fmt("max |det| %.3g", worst)};
}

Outcome bell_witness() {
  const auto c = classify(SimplexWeights::make({1, 0, 0, 0}), Alpha(kQuarterPi));
  return {c.label == Label::Entangled && std::abs(c.witness + 0.5) <= 1e-12,
          fmt("%s, min eigenvalue %.17g", std::string(to_string(c.label)).c_str(), c.witness)};
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  code = cli::run(args, out, err);
  return out.str();
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"volume", "--alpha-frac", "0.5", "--samples", "200000", "--seed", "42", "--json"},
      {"volume", "--alpha-frac", "0.5", "--samples", "200000", "--seed", "42"},
      {"grid", "--alpha-frac", "0.75", "--resolution", "24"},
  };
  bool ok = true;
  std::size_t bytes = 0;
  for (const auto& cmd : commands) {
    int c1 = 0;
    int c2 = 0;
    const auto first = run_cli(cmd, c1);
    const auto second = run_cli(cmd, c2);
    ok &= c1 == 0 && c2 == 0 && !first.empty() && first == second;
    bytes += first.size();
  }
  return {ok, fmt("%zu bytes compared", bytes)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"factorization identity", factorization_identity},
      {"oracle equivalence", oracle_equivalence},
      {"alpha = 0 totality", alpha_zero_totality},
      {"octahedron ratio", octahedron_ratio},
      {"monotone shrinkage", monotone_shrinkage},
      {"cone on boundary", cone_on_boundary},
      {"circular case", circular_case},
      {"edge-midpoint pinning", edge_midpoints},
      {"fixed plane", fixed_plane},
      {"reflection structure", reflection_structure},
      {"tetrahedron regularity", tetrahedron_regularity},
      {"equal entanglement", equal_entanglement},
      {"ruled surface", ruled_surface},
      {"Bell-vertex witness", bell_witness},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %-24s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
