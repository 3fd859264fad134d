// Acceptance runner: one PASS/FAIL line per criterion, with the measured
// residual next to its tolerance. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "spd_bregman/divergences.hpp"
#include "spd_bregman/means.hpp"
#include "spd_bregman/mirror_maps.hpp"
#include "spd_bregman/sampling.hpp"
#include "spd_bregman/variational.hpp"
#include "support.hpp"

using namespace spdb;
using spdb::testing::kAllMaps;

namespace {

const MapRegistry maps;

struct Criterion {
  int id;
  std::string title;
  bool passed = true;
  std::vector<std::string> notes;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

void print(const Criterion& c, double secs) {
  std::printf("[%s] %d. %s (%.1f s)\n", c.passed ? "PASS" : "FAIL", c.id, c.title.c_str(), secs);
  for (const auto& n : c.notes) std::printf("       %s\n", n.c_str());
  std::fflush(stdout);
}

void note_report(Criterion& c, const VerificationReport& r) {
  c.passed = c.passed && r.passed;
  c.notes.push_back(std::string(r.passed ? "ok   " : "FAIL ") + std::string(to_string(r.check)) + " " + r.subject +
                    fmt(": max residual %.3e (tol %.0e)", r.max_residual, r.tolerance) +
                    (r.failures.empty() ? "" : ", " + std::to_string(r.failures.size()) + " failing samples"));
}

Criterion recovery(int id, Side side) {
  Criterion c{id, side == Side::Forward ? "forward symmetrization minimizer is the arithmetic mean"
                                        : "reverse symmetrization minimizer is the dual arithmetic mean pulled back"};
  for (MapKind k : kAllMaps) {
    double worst = 0;
    int unconverged = 0;
    bool ok = true;
    for (int n = 2; n <= 5; ++n) {
      const VerificationReport r = verify_theorem(maps.get(k), side, n, 50, {}, 1000 + n, 1e-4);
      worst = std::max(worst, r.max_residual);
      unconverged += static_cast<int>(r.findings.size());
      ok = ok && r.passed;
    }
    c.passed = c.passed && ok;
    c.notes.push_back(std::string(ok ? "ok   " : "FAIL ") + std::string(map_tag(k)) +
                      fmt(": 200 pairs, max relative distance %.3e (tol 1e-04)", worst) +
                      (unconverged ? ", " + std::to_string(unconverged) + " runs hit the iteration budget" : ""));
  }
  return c;
}

Criterion gradients() {
  Criterion c{3, "objective gradients match central finite differences"};
  for (MapKind k : kAllMaps) {
    for (Side side : {Side::Forward, Side::Reverse}) {
      double worst = 0;
      bool ok = true;
      for (int n = 2; n <= 6; ++n) {
        const VerificationReport r = verify_gradient(maps.get(k), side, n, 20, 2000 + n, 1e-5);
        worst = std::max(worst, r.max_residual);
        ok = ok && r.passed;
      }
      c.passed = c.passed && ok;
      c.notes.push_back(std::string(ok ? "ok   " : "FAIL ") + std::string(map_tag(k)) + " " +
                        std::string(to_string(side)) + fmt(": 100 triples, max relative error %.3e (tol 1e-05)", worst));
    }
  }
  return c;
}

Criterion closed_forms() {
  Criterion c{4, "closed forms equal the generic symmetrizations"};
  for (MapKind k : kAllMaps) {
    std::vector<std::string> findings;
    double worst = 0;
    bool ok = true;
    for (int n = 2; n <= 5; ++n) {
      const VerificationReport r = verify_closed_forms(maps.get(k), n, 50, 3000 + n, 1e-10, 1e-9);
      worst = std::max(worst, r.max_residual);
      ok = ok && r.passed;
      if (n == 5) findings = r.findings;
    }
    c.passed = c.passed && ok;
    c.notes.push_back(std::string(ok ? "ok   " : "FAIL ") + std::string(map_tag(k)) +
                      fmt(": 200 pairs, max relative gap %.3e (identities 1e-10, cells 1e-9)", worst));
    for (const auto& f : findings) c.notes.push_back("     finding: " + f);
  }
  return c;
}

Criterion s_divergence_identity() {
  Criterion c{5, "forward Burg symmetrization at the arithmetic mean is the S-divergence"};
  const MirrorMap& burg = maps.get(MapKind::Burg);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 8;
    Rng rng(5000, (static_cast<std::uint64_t>(n) << 32) | i);
    const SpdMatrix x = random_spd(n, rng), y = random_spd(n, rng);
    const double generic = forward_symmetrized(burg, x, y, arithmetic_mean(x, y)).value;
    const double sdiv = s_divergence(x, y).value;
    worst = std::max(worst, std::abs(generic - sdiv) / std::max(1.0, std::abs(sdiv)));
  }
  c.passed = worst <= 1e-12;
  c.notes.push_back(fmt("200 pairs, max gap %.3e (tol 1e-12, relative to max(1, |value|))", worst));
  return c;
}

Criterion mean_axioms() {
  Criterion c{6, "mean axioms and invariance classes"};
  struct Expect {
    MeanKind kind;
    InvarianceClass cls;
  };
  const Expect expected[] = {{MeanKind::of(MeanType::Arithmetic), InvarianceClass::GLn},
                             {MeanKind::of(MeanType::Geometric), InvarianceClass::GLn},
                             {MeanKind::of(MeanType::Harmonic), InvarianceClass::GLn},
                             {MeanKind::of(MeanType::LogEuclidean), InvarianceClass::On}};
  for (const auto& e : expected) {
    for (int n = 2; n <= 4; ++n) {
      const AxiomReport r = audit_mean_axioms(e.kind, n, 100, 6000 + n, maps);
      const bool cls_ok = r.invariance == e.cls;
      const bool witness_ok = e.cls == InvarianceClass::GLn || (r.gl_witness && r.gl_witness->residual > 1e-4);
      const AxiomResult& btw = r.axiom("betweenness");
      const AxiomResult& mono = r.axiom("monotonicity");
      const bool ok = cls_ok && witness_ok && btw.passed && mono.passed;
      c.passed = c.passed && ok;
      std::string line = std::string(ok ? "ok   " : "FAIL ") + describe(e.kind) + " n=" + std::to_string(n) +
                         ": class " + std::string(to_string(r.invariance)) +
                         fmt(" (gl %.1e, on %.1e)", r.gl_residual, r.on_residual) +
                         fmt(", betweenness %.2e, monotonicity %.2e (tol 1e-08)", btw.max_residual, mono.max_residual);
      if (r.gl_witness) line += fmt(", GL witness residual %.2e", r.gl_witness->residual);
      c.notes.push_back(line);
    }
  }
  return c;
}

Criterion duality_and_monotonicity() {
  Criterion c{7, "Fenchel round trips and operator monotonicity of the gradients"};
  for (MapKind k : kAllMaps) {
    double worst_dual = 0, worst_mono = 0;
    bool ok = true;
    for (int n = 1; n <= 8; ++n) {
      const VerificationReport d = verify_duality(maps.get(k), n, 25, 7000 + n, 1e-9);
      const VerificationReport m = audit_operator_monotone(maps.get(k), n, 25, 7100 + n, 1e-9);
      worst_dual = std::max(worst_dual, d.max_residual);
      worst_mono = std::max(worst_mono, m.max_residual);
      ok = ok && d.passed && m.passed;
    }
    c.passed = c.passed && ok;
    c.notes.push_back(std::string(ok ? "ok   " : "FAIL ") + std::string(map_tag(k)) +
                      fmt(": duality residual %.3e (tol 1e-09), order violation %.3e (tol 1e-09)", worst_dual,
                          worst_mono));
  }
  return c;
}

Criterion divergence_axioms() {
  Criterion c{8, "divergence axioms: nonnegativity, indiscernibles, first-argument convexity"};
  for (MapKind k : kAllMaps) {
    const auto r = spdb::testing::check_divergence_axioms(maps.get(k), 25, 8000);
    c.passed = c.passed && r.passed;
    c.notes.push_back(std::string(r.passed ? "ok   " : "FAIL ") + std::string(map_tag(k)) + ": " +
                      std::to_string(r.samples) + " draws" +
                      fmt(", min value %.2e, max near-pair value %.2e", r.min_value, r.max_near_value) +
                      fmt(", min far-pair value %.2e, convexity excess %.2e", r.min_far_value,
                          r.max_convexity_excess));
  }
  return c;
}

Criterion geodesic_checks() {
  Criterion c{9, "geodesic endpoints, commuting midpoint, symmetry and congruence invariance"};
  const auto r = spdb::testing::check_geodesic(140, 9000);
  c.passed = r.endpoints_exact && r.commuting_residual <= 1e-8 && r.symmetry_residual <= 1e-8 &&
             r.congruence_residual <= 1e-8;
  c.notes.push_back(std::string("endpoints exact: ") + (r.endpoints_exact ? "yes" : "no") +
                    fmt(", commuting %.2e, symmetry %.2e", r.commuting_residual, r.symmetry_residual) +
                    fmt(", congruence %.2e (tol 1e-08)", r.congruence_residual));
  return c;
}

}  // namespace

int main() {
  using Factory = Criterion (*)();
  const Factory factories[] = {
      [] { return recovery(1, Side::Forward); },
      [] { return recovery(2, Side::Reverse); },
      gradients,
      closed_forms,
      s_divergence_identity,
      mean_axioms,
      duality_and_monotonicity,
      divergence_axioms,
      geodesic_checks,
  };
  int failed = 0;
  for (Factory f : factories) {
    const Clock clock;
    const Criterion c = f();
    print(c, clock.seconds());
    if (!c.passed) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(factories)) - failed, std::size(factories));
  return failed == 0 ? 0 : 1;
}
