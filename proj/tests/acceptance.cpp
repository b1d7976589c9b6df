// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "schmidt/cones.hpp"
#include "schmidt/maps.hpp"
#include "schmidt/norms.hpp"
#include "schmidt/oracle.hpp"
#include "schmidt/random.hpp"

using namespace schmidt;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> notes;
  bool ok = true;

  void check(bool cond, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Criterion::check(bool cond, const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  if (!cond) ok = false;
  notes.push_back(std::string(cond ? "ok   " : "FAIL ") + buf);
}

SeeSawConfig seesaw(std::uint64_t seed) {
  SeeSawConfig c;
  c.rng = RandomConfig{seed, 0};
  return c;
}

OracleConfig oracle(std::uint64_t seed, int samples = 20000) {
  OracleConfig c;
  c.samples = samples;
  c.rng = RandomConfig{seed, 0};
  return c;
}

// Values shared with the oracle-equivalence criterion.
struct Pair {
  std::string label;
  double seesaw;
  std::function<double()> brute;
};
std::vector<Pair> oracle_pairs;

void example51(Criterion& c) {
  const int n = 3;
  const auto x = entangled_shift_outer(n);
  const auto t0 = Clock::now();
  for (int k = 1; k <= 3; ++k) {
    const double mo = min_order_norm(x, k, seesaw(7)).value;
    const double om = omin_norm(x, k, seesaw(7)).value;
    c.check(std::abs(mo - k / (2.0 * n)) <= 1e-6, "k=%d min_order_norm = %.9f, expected k/(2n) = %.9f", k, mo,
            k / (2.0 * n));
    c.check(om >= static_cast<double>(k) / n - 1e-6, "k=%d omin_norm = %.9f >= k/n = %.9f", k, om,
            static_cast<double>(k) / n);
    oracle_pairs.push_back({"minorder shifted k=" + std::to_string(k), mo,
                            [x, k] { return brute_min_order_norm(x, k, oracle(100 + k)); }});
    oracle_pairs.push_back(
        {"omin shifted k=" + std::to_string(k), om, [x, k] { return brute_omin_norm(x, k, oracle(110 + k)); }});
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  c.check(secs < 30.0, "runtime %.2f s < 30 s", secs);
}

void sk_closed_forms(Criterion& c) {
  const int n = 3;
  const BipartiteOperator p(projector(maximally_entangled(n)), Dims{n, n});
  for (int k = 1; k <= 3; ++k) {
    const double v = sk_norm(p, k, seesaw(k)).value;
    c.check(std::abs(v - static_cast<double>(k) / n) <= 1e-6, "k=%d sk_norm(|phi><phi|) = %.12f, k/n = %.12f", k, v,
            static_cast<double>(k) / n);
    oracle_pairs.push_back(
        {"sk maxent k=" + std::to_string(k), v, [p, k] { return brute_sk_norm(p, k, oracle(120 + k)); }});
  }
  Rng rng(RandomConfig{2024, 0});
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const BipartiteOperator x(random_gaussian(9, 9, rng), Dims{3, 3});
    const double v = sk_norm(x, 3, seesaw(t)).value;
    worst = std::max(worst, std::abs(v - operator_norm(x.matrix())));
    oracle_pairs.push_back(
        {"sk random full-rank #" + std::to_string(t), v, [x, t] { return brute_sk_norm(x, 3, oracle(1000 + t)); }});
  }
  c.check(worst <= 1e-8, "50 random X in M_3(M_3): max |sk_norm(X,3) - ||X||| = %.3g <= 1e-8", worst);
}

void swap_block_positivity(Criterion& c) {
  for (int n = 2; n <= 3; ++n) {
    const BipartiteOperator s(swap_operator(n), Dims{n, n});
    const auto v1 = k_block_positivity(s, 1, seesaw(n));
    const auto v2 = k_block_positivity(s, 2, seesaw(n));
    c.check(v1.status == BlockPositivityStatus::kHeuristicallyPositive && v1.min_value >= -1e-8,
            "n=%d k=1 %s, min = %.3g", n, to_string(v1.status), v1.min_value);
    c.check(v2.refuted() && std::abs(v2.min_value + 1.0) <= 1e-6, "n=%d k=2 %s, min = %.12f", n,
            to_string(v2.status), v2.min_value);
    for (int k = 1; k <= 2; ++k) {
      const double mv = k == 1 ? v1.min_value : v2.min_value;
      oracle_pairs.push_back({"blockmin swap n=" + std::to_string(n) + " k=" + std::to_string(k), mv,
                              [s, k, n] { return brute_block_min(s, k, oracle(130 + 10 * n + k)); }});
    }
  }
}

void reduction_threshold(Criterion& c) {
  for (int k = 1; k <= 2; ++k) {
    const double lo = 1.0 / k - 0.05, hi = 1.0 / k + 0.05;
    const auto a = k_positivity(MapRepr::reduction(3, lo), k, seesaw(k));
    const auto b = k_positivity(MapRepr::reduction(3, hi), k, seesaw(k));
    c.check(a.status == BlockPositivityStatus::kHeuristicallyPositive, "k=%d p=%.3f %s (min %.6f, expected %.6f)",
            k, lo, to_string(a.status), a.min_value, 1.0 - lo * k);
    c.check(b.refuted(), "k=%d p=%.3f %s (min %.6f, expected %.6f)", k, hi, to_string(b.status), b.min_value,
            1.0 - hi * k);
  }
}

void hierarchy(Criterion& c) {
  Rng rng(RandomConfig{55, 0});
  int bad_chain = 0, bad_factor = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const BipartiteOperator x(random_gaussian(6, 6, rng), Dims{2, 3});
    for (int k = 1; k <= 2; ++k) {
      const auto cfg = seesaw(5000 + t);
      const double mo = min_order_norm(x, k, cfg).value;
      const double om = omin_norm(x, k, cfg).value;
      const double dec = dec_norm_value(x, hermitian_split_decomposition(x, k, cfg), k, cfg).value;
      const double mx = max_order_norm_upper(x, k, cfg).value;
      const double slack = std::min({om - mo, dec - om, mx - dec});
      worst = std::min(worst, slack);
      if (slack < -1e-6) ++bad_chain;
      if (om > 2.0 * mo + 1e-6) ++bad_factor;
    }
  }
  c.check(bad_chain == 0, "min_order <= omin <= dec <= max_upper on 100 X, k=1,2: %d violations (worst slack %.3g)",
          bad_chain, worst);
  c.check(bad_factor == 0, "omin <= 2 min_order: %d violations", bad_factor);
}

void stabilization(Criterion& c) {
  Rng rng(RandomConfig{66, 0});
  int viol = 0;
  double worst = -1e300;
  for (int t = 0; t < 20; ++t) {
    const MapRepr phi(BipartiteOperator(random_hermitian(9, rng), Dims{3, 3}));
    for (int k = 1; k <= 2; ++k) {
      const double level = idk_hermitian_form_norm(phi, k, seesaw(t)).value;
      const double sampled = brute_stabilized_form(phi, k + 2, k, oracle(600 + t, 1000));
      worst = std::max(worst, sampled - level);
      if (sampled > level + 1e-6) ++viol;
    }
  }
  c.check(viol == 0, "20 maps, k=1,2, m=k+2: %d violations (max sampled - level = %.3g)", viol, worst);
}

void transpose_cb(Criterion& c) {
  const MapRepr t = MapRepr::transpose(3);
  for (int k = 1; k <= 3; ++k) {
    const double v = idk_op_norm(t, k, seesaw(k)).value;
    c.check(std::abs(v - k) <= 1e-4, "k=%d ||id_k (x) T|| = %.9f", k, v);
    oracle_pairs.push_back(
        {"idk transpose k=" + std::to_string(k), v, [t, k] { return brute_idk_norm(t, k, oracle(140 + k)); }});
  }
}

void cptp_contraction(Criterion& c) {
  Rng rng(RandomConfig{88, 0});
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    const MapRepr phi(random_cptp(3, 3, rng));
    for (int k = 1; k <= 2; ++k) worst = std::max(worst, std::abs(hermitian_trace_norm(phi, k, seesaw(t)).value - 1.0));
  }
  c.check(worst <= 1e-9, "30 CPTP maps, k=1,2: max |norm - 1| = %.3g", worst);
}

void sn_pipeline(Criterion& c) {
  const auto rho9 = isotropic_state(0.9, 3), rho6 = isotropic_state(0.6, 3);
  const auto w = reduction_witness(3, 2);
  const auto c9 = witness_check(w, rho9, 2, seesaw(9));
  const auto c6 = witness_check(w, rho6, 2, seesaw(9));
  c.check(c9.valid() && std::abs(c9.pairing + 0.35) <= 1e-9, "witness F=0.9: pairing %.12f, valid %d", c9.pairing,
          c9.valid());
  c.check(!c6.valid(), "witness F=0.6: pairing %.12f, valid %d", c6.pairing, c6.valid());
  const MapRepr phi = detection_map(MapRepr::reduction(3, 0.5), seesaw(9));
  const auto r9 = sn_contraction_test(rho9, phi, 2, seesaw(9));
  const auto r6 = sn_contraction_test(rho6, phi, 2, seesaw(9));
  c.check(r9.detected, "contraction F=0.9: trace norm %.9f, map norm %.9f, detected %d", r9.output_trace_norm,
          r9.map_norm, r9.detected);
  c.check(!r6.detected, "contraction F=0.6: trace norm %.9f, detected %d", r6.output_trace_norm, r6.detected);
}

void cone_duality(Criterion& c) {
  Rng rng(RandomConfig{1010, 0});
  const Dims d{3, 3};
  double worst = 1e300;
  int not_positive = 0;
  for (int t = 0; t < 200; ++t) {
    const int k = 1 + t % 2;
    const BipartiteOperator w =
        t % 10 == 0 ? reduction_witness(3, k) : overlap_witness(PureState(random_unit_vector(9, rng), d), k);
    if (t < 20 && k_block_positivity(w, k, seesaw(t)).refuted()) ++not_positive;
    SchmidtEnsemble ens;
    ens.k = k;
    const int terms = 1 + static_cast<int>(rng.uniform() * 5);
    std::vector<double> weights(terms);
    double total = 0.0;
    for (auto& x : weights) total += (x = 0.05 + rng.uniform());
    for (int i = 0; i < terms; ++i) ens.terms.push_back({weights[i] / total, random_sr_k_vector(d, k, rng)});
    ens.validate();
    worst = std::min(worst, (w.matrix() * ens.density()).trace().real());
  }
  c.check(not_positive == 0, "generated witnesses pass the block-positivity check (20 sampled)");
  c.check(worst >= -1e-8, "200 pairings: min Tr(W rho) = %.3g >= -1e-8", worst);
}

void oracle_equivalence(Criterion& c) {
  int bad = 0;
  double worst = 0.0;
  for (const auto& p : oracle_pairs) {
    const double b = p.brute();
    const double diff = std::abs(b - p.seesaw);
    worst = std::max(worst, diff);
    if (diff > 1e-3) {
      ++bad;
      c.check(false, "%s: seesaw %.9f vs oracle %.9f", p.label.c_str(), p.seesaw, b);
    }
  }
  c.check(bad == 0, "%zu instances, max |oracle - optimizer| = %.3g", oracle_pairs.size(), worst);
}

}  // namespace

int main() {
  std::vector<std::pair<Criterion, std::function<void(Criterion&)>>> all;
  all.push_back({{1, "shifted entangled operator order norms"}, example51});
  all.push_back({{2, "S(k) closed forms"}, sk_closed_forms});
  all.push_back({{3, "SWAP block positivity"}, swap_block_positivity});
  all.push_back({{4, "reduction-family k-positivity threshold"}, reduction_threshold});
  all.push_back({{5, "norm hierarchy"}, hierarchy});
  all.push_back({{6, "CB stabilization"}, stabilization});
  all.push_back({{7, "transpose CB values"}, transpose_cb});
  all.push_back({{8, "CPTP contraction"}, cptp_contraction});
  all.push_back({{9, "Schmidt-number pipeline consistency"}, sn_pipeline});
  all.push_back({{10, "cone duality"}, cone_duality});
  all.push_back({{11, "oracle equivalence"}, oracle_equivalence});

  int failed = 0;
  const auto start = Clock::now();
  for (auto& [crit, body] : all) {
    const auto t0 = Clock::now();
    try {
      body(crit);
    } catch (const std::exception& e) {
      crit.check(false, "exception: %s", e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s (%.1f s)\n", crit.ok ? "PASS" : "FAIL", crit.id, crit.title.c_str(), secs);
    for (const auto& n : crit.notes) std::printf("       %s\n", n.c_str());
    std::fflush(stdout);
    if (!crit.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed (%.1f s total)\n", static_cast<int>(all.size()) - failed, all.size(),
              std::chrono::duration<double>(Clock::now() - start).count());
  return failed;
}
