// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails or exceeds its time budget.

#include "oracles.hpp"

#include "xmod/duality.hpp"
#include "xmod/report.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace xmod;

namespace {

// Pinned tolerances and time budgets (seconds).
constexpr double kResidual = 1e-8;     // subspace, unitary and covariance residuals
constexpr double kAxiom = 1e-9;        // associativity, involution and unit residuals
constexpr double kPairing = 1e-12;     // character values
constexpr double kLimitFiber = 10, kLimitTorus = 30, kLimitTakesaki = 60, kLimitRoundTrip = 120,
                 kLimitPartial = 60, kLimitDecomposition = 120, kLimitEquivalence = 120, kLimitUniversal = 120,
                 kLimitAlgebra = 30;
constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(secs < limit, "over time budget");
  if (!out.ok) ++failures;
  std::printf("%s %d %s:%s (%.2f s, limit %.0f s)\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), out.note.str().c_str(),
              secs, limit);
  std::fflush(stdout);
}

std::vector<FiniteGroup> abelian_groups_up_to_8() {
  std::vector<FiniteGroup> out;
  for (int n = 1; n <= 8; ++n) out.push_back(cyclic_group(n));
  const auto z2 = cyclic_group(2);
  out.push_back(direct_product({z2, z2}));
  out.push_back(direct_product({z2, cyclic_group(4)}));
  out.push_back(direct_product({z2, z2, z2}));
  return out;
}

bool axioms_hold(const StarAlgebra& a) {
  const AxiomReport r = axiom_report(a);
  return r.associativity <= kAxiom && r.involution <= kAxiom && r.unit <= kAxiom && r.min_trace_eigenvalue > 0.0;
}

std::size_t count_ok(const Json& report, int* total) {
  std::size_t ok = 0;
  *total = 0;
  for (const auto& r : report["results"]) {
    ++*total;
    ok += r["ok"].get<bool>() ? 1 : 0;
  }
  return ok;
}

}  // namespace

int main() {
  const std::vector<Instance> corpus = bundled_corpus();

  criterion(1, "crossed product equals the fiber over the trivial character", kLimitFiber, [&](Outcome& o) {
    int n = 0;
    double worst = 0.0;
    for (const auto& inst : corpus) {
      if (!inst.action || !inst.C.is_two_abelian()) continue;
      const FiberCheck r = crossed_product_via_fiber_check(semidirect_bundle(*inst.action), kResidual);
      ++n;
      worst = std::max(worst, r.residual);
      o.require(r.ok && r.ideal_dim == r.fiber_ideal_dim && r.residual < kResidual, inst.name);
    }
    o.require(n >= 1, "no 2-Abelian instances");
    o.note << " " << n << " 2-Abelian corpus instances, max residual " << worst;
  });

  criterion(2, "finite torus crossed product against the brute-force quotient", kLimitTorus, [&](Outcome& o) {
    for (int n : {2, 3, 4}) {
      const StrictAction act = finite_torus_action(n);
      const DimensionVector got = wedderburn(crossed_product(semidirect_bundle(act)).algebra, kSeed).dims;
      const std::vector<int> expected = oracle::crossed_product_dims(act);
      o.note << " n=" << n << " " << to_string(got) << " vs oracle " << to_string(expected) << ";";
      o.require(got == expected, "n=" + std::to_string(n) + " differs from oracle");
      o.require(expected == std::vector<int>{n}, "n=" + std::to_string(n) + " oracle is not a single M_n");
    }
  });

  criterion(3, "double crossed product A x| G x| G^ against A (x) M_|G|", kLimitTakesaki, [&](Outcome& o) {
    const auto z2 = cyclic_group(2), z3 = cyclic_group(3), z4 = cyclic_group(4);
    const auto v4 = direct_product({z2, z2});
    const std::vector<StrictAction> acts = {
        trivial_strict_action(complex_numbers(), group_crossed_module(z2)),
        trivial_strict_action(matrix_algebra(2), group_crossed_module(z3)),
        translation_action(group_crossed_module(z2), identity_hom(z2)),
        translation_action(group_crossed_module(z4), identity_hom(z4)),
        translation_action(group_crossed_module(v4), identity_hom(v4)),
        inner_strict_action(group_crossed_module(z3), regular_representation(z3), {1.0}),
        inner_strict_action(group_crossed_module(v4), regular_representation(v4), {1.0}),
    };
    for (const auto& act : acts) {
      const CharacterGroup cg = character_group(act.C.G);
      const TakesakiTakai tt = takesaki_takai(act.A, act.C.G, act.alpha, cg.dual, cg.pairing);
      o.require(tt.iterated_dims == tt.tensor_dims, act.name);
      o.require(oracle::dimension_vector(tt.iterated) == tt.tensor_dims, act.name + " oracle");
      o.require(tt.covariance_residual < kResidual, act.name + " covariance");
    }
    o.note << " " << acts.size() << " pairs, |G| <= 4";
  });

  criterion(4, "duality round trip", kLimitRoundTrip, [&](Outcome& o) {
    int n = 0;
    double worst = 0.0;
    for (const auto& inst : corpus) {
      if (!inst.action || !inst.C.is_abelian()) continue;
      const RoundTrip r = duality_roundtrip(*inst.action, kResidual);
      ++n;
      worst = std::max({worst, r.unitary_residual, r.action_residual});
      o.require(r.ok && r.unitary_residual < kResidual && r.action_residual < kResidual, inst.name + " " + r.detail);
    }
    o.require(n >= 3, "fewer than 3 Abelian instances");
    o.note << " " << n << " Abelian corpus instances, max unitary/action residual " << worst;
  });

  criterion(5, "partial crossed products of strict extensions", kLimitPartial, [&](Outcome& o) {
    int n = 0;
    bool example = false, green = false;
    for (const auto& inst : corpus) {
      if (!inst.extension) continue;
      const PartialCrossedCheck r = check_partial_crossed(inst.extension->action, inst.extension->ext);
      ++n;
      o.require(r.ok, inst.name + " " + r.detail);
      example = example || (inst.extension->kind == "semidirect" && inst.name == "example-semidirect-z4-z2");
      green = green || inst.extension->kind == "normal_subgroup";
    }
    o.require(n >= 5, "fewer than 5 extensions");
    o.require(example, "semidirect example missing");
    o.require(green, "normal subgroup case missing");
    o.note << " " << n << " extensions";
  });

  criterion(6, "four-step decomposition reproduces the direct crossed product", kLimitDecomposition, [&](Outcome& o) {
    int n = 0;
    for (const auto& inst : corpus) {
      if (!inst.action) continue;
      const auto& d = inst.C.boundary;
      if (kernel(d).order() < 2 || image(d).order() < 2 || cokernel(d).group.order() < 2) continue;
      const DecompositionReport r = full_decomposition(*inst.action, kSeed);
      ++n;
      o.require(r.ok && r.result == r.direct && !r.direct.empty(), inst.name);
      o.note << " " << inst.name << " " << to_string(r.result) << ";";
    }
    o.require(n >= 4, "fewer than 4 instances with nontrivial kernel, image and cokernel");
  });

  criterion(7, "pi1, pi2 and crossed products across certified equivalences", kLimitEquivalence, [&](Outcome& o) {
    int total = 0;
    const Report r = verify_report("equivalence", corpus, RunOptions{1e-9, kSeed});
    int count = 0;
    for (const auto& e : r.json["results"]) {
      for (const auto& q : e["equivalences"]) {
        ++total;
        o.require(q["ok"].get<bool>() && q.contains("corresponding_crossed_product"),
                  e["instance"].get<std::string>() + " " + q["kind"].get<std::string>());
      }
      ++count;
    }
    o.require(total >= 1, "no equivalences");
    o.require(r.ok, "suite reported a failure");
    o.note << " " << total << " equivalences over " << count << " instances";
  });

  criterion(8, "universal property: unique factorization of every representation", kLimitUniversal, [&](Outcome& o) {
    const Report r = verify_report("universal", corpus, RunOptions{1e-9, kSeed});
    int reps = 0, instances = 0;
    const std::size_t ok = count_ok(r.json, &instances);
    for (const auto& e : r.json["results"])
      for (const auto& q : e["representations"]) {
        ++reps;
        o.require(q["ok"].get<bool>() && q["kernel_dim"].get<int>() == 0,
                  e["instance"].get<std::string>() + " " + q["representation"].get<std::string>());
      }
    o.require(ok == static_cast<std::size_t>(instances) && r.ok, "suite reported a failure");
    o.note << " " << reps << " representations over " << instances << " instances";
  });

  criterion(9, "algebra layer: C[S3], biduality, axioms", kLimitAlgebra, [&](Outcome& o) {
    const DimensionVector s3 = wedderburn(group_algebra(symmetric_group(3)), kSeed).dims;
    o.require(s3 == DimensionVector{1, 1, 2}, "C[S3] = " + to_string(s3));
    o.note << " C[S3] " << to_string(s3) << ";";

    int groups = 0;
    for (const auto& g : abelian_groups_up_to_8()) {
      const CharacterGroup cg = character_group(g);
      const int n = g.order();
      bool good = cg.dual.order() == n;
      for (int c = 0; good && c < n; ++c)
        for (int e = 0; e < n; ++e)
          for (int x = 0; x < n; ++x)
            good = good && std::abs(cg.value(cg.dual.mul(c, e), x) - cg.value(c, x) * cg.value(e, x)) < kPairing &&
                   std::abs(cg.value(c, g.mul(x, e)) - cg.value(c, x) * cg.value(c, e)) < kPairing;
      const CharacterGroup cgd = character_group(cg.dual);
      const GroupHom ev = bidual_map(cg, cgd);
      good = good && ev.is_bijective();
      for (int x = 0; good && x < n; ++x)
        for (int c = 0; c < n; ++c) good = good && std::abs(cgd.value(ev(x), c) - cg.value(c, x)) < kPairing;
      o.require(good, "biduality for " + describe(g));
      ++groups;
    }
    o.note << " biduality on " << groups << " Abelian groups;";

    std::vector<std::pair<std::string, StarAlgebra>> algebras;
    for (int n = 1; n <= 4; ++n) algebras.emplace_back("M" + std::to_string(n), matrix_algebra(n));
    algebras.emplace_back("C[S3]", group_algebra(symmetric_group(3)));
    for (const auto& g : abelian_groups_up_to_8()) algebras.emplace_back("C[" + describe(g) + "]", group_algebra(g));
    for (const auto& inst : corpus) {
      if (!inst.action) continue;
      const FellBundleCM cmb = semidirect_bundle(*inst.action);
      algebras.emplace_back(inst.name + " A", inst.action->A);
      algebras.emplace_back(inst.name + " sections", cmb.bundle.total);
      const CrossedProduct cp = crossed_product(cmb);
      if (!cp.degenerate) algebras.emplace_back(inst.name + " crossed product", cp.algebra);
    }
    for (const auto& [name, a] : algebras) o.require(axioms_hold(a), "axioms of " + name);
    o.note << " axioms on " << algebras.size() << " algebras (" << validated_algebra_count()
           << " validated at construction in this run)";
  });

  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
