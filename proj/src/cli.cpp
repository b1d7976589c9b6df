#include "schmidt/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "schmidt/cones.hpp"
#include "schmidt/io.hpp"
#include "schmidt/maps.hpp"
#include "schmidt/norms.hpp"
#include "schmidt/oracle.hpp"

#ifndef SCHMIDT_VERSION
#define SCHMIDT_VERSION "dev"
#endif

namespace schmidt::cli {

namespace {

using io::Json;

struct Options {
  int k = 1;
  std::uint64_t seed = 0;
  int restarts = 20;
  int max_iters = 200;
  double tol = 1e-9;
  int threads = 1;

  int samples = 20000;
  int polish = 200;
  int warmup = 16;
  int m = 0;

  std::string file, witness, state, ensemble, map, vector, left, right;
  bool wrap = false;
  bool normalize = false;

  std::string fixture;
  int n = 3;
  double p = 0.5;
  double fidelity = 0.9;
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json parameters = Json::object();
  Json result = Json::object();
  std::string summary;
  int code = kComputed;
  bool raw = false;  // fixtures print the file itself, not a report
};

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

Json load_input(Report& rep, const std::string& label, const std::string& path) {
  std::string raw;
  Json j = io::load_json(path, &raw);
  rep.inputs[label] = Json{{"path", path}, {"sha256", sha256_hex(raw)}};
  return j;
}

SeeSawConfig seesaw(const Options& o, Report& rep, bool with_k = true) {
  SeeSawConfig cfg;
  cfg.restarts = o.restarts;
  cfg.max_iters = o.max_iters;
  cfg.obj_tol = o.tol;
  cfg.threads = o.threads;
  cfg.rng = RandomConfig{o.seed, 0};
  cfg.validate();
  if (with_k) rep.parameters["k"] = o.k;
  rep.parameters["seed"] = o.seed;
  rep.parameters["restarts"] = o.restarts;
  rep.parameters["max_iters"] = o.max_iters;
  rep.parameters["tol"] = o.tol;
  rep.parameters["threads"] = o.threads;
  return cfg;
}

OracleConfig oracle_cfg(const Options& o, Report& rep) {
  OracleConfig cfg;
  cfg.samples = o.samples;
  cfg.polish_steps = o.polish;
  cfg.warmup = o.warmup;
  cfg.rng = RandomConfig{o.seed, 0};
  cfg.validate();
  rep.parameters["k"] = o.k;
  rep.parameters["seed"] = o.seed;
  rep.parameters["samples"] = o.samples;
  rep.parameters["polish_steps"] = o.polish;
  rep.parameters["warmup"] = o.warmup;
  return cfg;
}

Json history_summary(const std::vector<std::vector<double>>& h) {
  Json out = Json::array();
  for (const auto& run : h) out.push_back(run.empty() ? 0.0 : run.back());
  return out;
}

Json estimate_json(const NormEstimate& e, Dims d) {
  Json out;
  out["value"] = e.value;
  out["direction"] = to_string(e.direction);
  out["restarts_used"] = e.restarts_used;
  out["iterations"] = e.iterations;
  out["converged"] = e.converged;
  if (e.witness) {
    Json w;
    w["left"] = io::to_json(e.witness->left, d);
    w["right"] = io::to_json(e.witness->right, d);
    if (e.witness->frame) w["frame"] = io::to_json(*e.witness->frame);
    out["witness"] = std::move(w);
  }
  out["restart_values"] = history_summary(e.histories);
  return out;
}

Json map_estimate_json(const MapNormEstimate& e) {
  Json out;
  out["value"] = e.value;
  out["direction"] = to_string(e.direction);
  out["restarts_used"] = e.restarts_used;
  out["iterations"] = e.iterations;
  out["converged"] = e.converged;
  if (e.attaining_input) out["attaining_input"] = io::to_json(*e.attaining_input);
  out["restart_values"] = history_summary(e.histories);
  return out;
}

Json verdict_json(const BlockPositivityVerdict& v) {
  Json out;
  out["status"] = to_string(v.status);
  out["min_value"] = v.min_value;
  out["restarts_used"] = v.restarts_used;
  out["converged"] = v.converged;
  if (v.witness) out["witness"] = io::to_json(*v.witness);
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

using Action = std::function<void(Report&)>;

// ---- norm -------------------------------------------------------------

void norm_commands(CLI::App& app, Options& o, Action& act, Report& rep) {
  auto* norm = app.add_subcommand("norm", "Schmidt-rank-constrained norms")->require_subcommand(1);
  auto leaf = [&](const char* name, const char* help, std::function<void(Report&)> body) {
    auto* s = norm->add_subcommand(name, help);
    s->add_option("file", o.file, "operator JSON")->required();
    s->add_option("--k", o.k, "Schmidt rank bound");
    s->add_option("--seed", o.seed, "RNG seed");
    s->add_option("--restarts", o.restarts, "random restarts");
    s->add_option("--max-iters", o.max_iters, "iterations per restart");
    s->add_option("--tol", o.tol, "objective stall tolerance");
    s->add_option("--threads", o.threads, "worker threads");
    s->callback([&, name, body] {
      rep.command = std::string("norm ") + name;
      act = body;
    });
  };
  auto load = [&](Report& r) { return io::operator_from_json(load_input(r, "file", o.file)); };

  leaf("sk", "S(k) norm (lower bound)", [&, load](Report& r) {
    const auto x = load(r);
    const auto e = sk_norm(x, o.k, seesaw(o, r));
    r.result = estimate_json(e, x.dims());
    r.summary = "S(k) norm " + fmt(e.value) + " (" + to_string(e.direction) + ")";
  });
  leaf("omin", "OMIN^k matrix-order norm (lower bound)", [&, load](Report& r) {
    const auto x = load(r);
    const auto e = omin_norm(x, o.k, seesaw(o, r));
    r.result = estimate_json(e, x.dims());
    r.summary = "OMIN norm " + fmt(e.value) + " (" + to_string(e.direction) + ")";
  });
  leaf("minorder", "minimal order norm (lower bound)", [&, load](Report& r) {
    const auto x = load(r);
    const auto e = min_order_norm(x, o.k, seesaw(o, r));
    r.result = estimate_json(e, x.dims());
    r.summary = "minimal order norm " + fmt(e.value) + " (" + to_string(e.direction) + ")";
  });
  leaf("maxorder", "maximal order norm (upper bound)", [&, load](Report& r) {
    const auto x = load(r);
    const auto e = max_order_norm_upper(x, o.k, seesaw(o, r));
    r.result = estimate_json(e, x.dims());
    r.summary = "maximal order norm <= " + fmt(e.value);
  });
  leaf("maxspace", "MAX^k operator space norm bounds", [&, load](Report& r) {
    const auto x = load(r);
    const auto b = maxk_space_norm_bounds(x, o.k, seesaw(o, r));
    r.result["lower"] = estimate_json(b.lower, x.dims());
    r.result["upper"] = estimate_json(b.upper, x.dims());
    r.summary = "MAX^k norm in [" + fmt(b.lower.value) + ", " + fmt(b.upper.value) + "]";
  });
}

// ---- cone -------------------------------------------------------------

void add_seesaw_flags(CLI::App* s, Options& o) {
  s->add_option("--k", o.k, "Schmidt rank bound");
  s->add_option("--seed", o.seed, "RNG seed");
  s->add_option("--restarts", o.restarts, "random restarts");
  s->add_option("--max-iters", o.max_iters, "iterations per restart");
  s->add_option("--tol", o.tol, "objective stall tolerance");
  s->add_option("--threads", o.threads, "worker threads");
}

void cone_commands(CLI::App& app, Options& o, Action& act, Report& rep) {
  auto* cone = app.add_subcommand("cone", "block positivity and Schmidt number certificates")->require_subcommand(1);

  auto* bp = cone->add_subcommand("blockpos", "k-block positivity test");
  bp->add_option("file", o.file, "Hermitian operator JSON")->required();
  add_seesaw_flags(bp, o);
  bp->callback([&] {
    rep.command = "cone blockpos";
    act = [&](Report& r) {
      const auto x = io::operator_from_json(load_input(r, "file", o.file));
      const auto v = k_block_positivity(x, o.k, seesaw(o, r));
      r.result = verdict_json(v);
      r.code = v.refuted() ? kViolation : kComputed;
      r.summary = std::string(to_string(v.status)) + ", min <v|X|v> = " + fmt(v.min_value);
    };
  });

  auto* wc = cone->add_subcommand("witness", "Schmidt number witness check");
  wc->add_option("--witness", o.witness, "witness operator JSON")->required();
  wc->add_option("--state", o.state, "density operator JSON")->required();
  add_seesaw_flags(wc, o);
  wc->callback([&] {
    rep.command = "cone witness";
    act = [&](Report& r) {
      const auto w = io::operator_from_json(load_input(r, "witness", o.witness));
      const auto rho = io::operator_from_json(load_input(r, "state", o.state));
      const auto c = witness_check(w, rho, o.k, seesaw(o, r));
      r.result["pairing"] = c.pairing;
      r.result["refute_tol"] = c.refute_tol;
      r.result["block_positivity"] = verdict_json(c.block_pos_evidence);
      r.result["valid"] = c.valid();
      r.code = c.valid() ? kViolation : kComputed;
      r.summary = std::string(c.valid() ? "detected: SN > " : "not detected at k = ") + std::to_string(o.k) +
                  ", Tr(W rho) = " + fmt(c.pairing);
    };
  });

  auto* sn = cone->add_subcommand("verify-sn", "verify a Schmidt-number upper bound from an ensemble");
  sn->add_option("--state", o.state, "density operator JSON")->required();
  sn->add_option("--ensemble", o.ensemble, "ensemble JSON")->required();
  sn->callback([&] {
    rep.command = "cone verify-sn";
    act = [&](Report& r) {
      const auto rho = io::operator_from_json(load_input(r, "state", o.state));
      const auto ens = io::ensemble_from_json(load_input(r, "ensemble", o.ensemble));
      const bool ok = sn_upper_verify(rho, ens);
      r.parameters["recon_tol"] = kDefaultTol.recon;
      r.result["verified"] = ok;
      r.result["k"] = ens.k;
      r.summary = ok ? "verified: SN <= " + std::to_string(ens.k) : "ensemble does not reconstruct the state";
    };
  });
}

// ---- map --------------------------------------------------------------

void map_commands(CLI::App& app, Options& o, Action& act, Report& rep) {
  auto* mp = app.add_subcommand("map", "linear maps given by Choi matrices")->require_subcommand(1);
  auto leaf = [&](const char* name, const char* help) {
    auto* s = mp->add_subcommand(name, help);
    add_seesaw_flags(s, o);
    return s;
  };
  auto load_map = [&](Report& r, const std::string& label, const std::string& path) {
    return io::map_from_json(load_input(r, label, path));
  };

  auto* kp = leaf("kpos", "k-positivity test");
  kp->add_option("file", o.file, "map JSON")->required();
  kp->callback([&, load_map] {
    rep.command = "map kpos";
    act = [&, load_map](Report& r) {
      const auto phi = load_map(r, "file", o.file);
      const auto v = k_positivity(phi, o.k, seesaw(o, r));
      r.result = verdict_json(v);
      r.code = v.refuted() ? kViolation : kComputed;
      r.summary = std::string(v.refuted() ? "not k-positive" : "heuristically k-positive") +
                  ", min Choi expectation = " + fmt(v.min_value);
    };
  });

  auto* kb = leaf("kpeb", "k-partially entanglement breaking test");
  kb->add_option("file", o.file, "map JSON")->required();
  kb->add_option("--ensemble", o.ensemble, "ensemble for the normalized Choi state (certifies)");
  kb->add_option("--witness", o.witness, "witness operator (refutes)");
  kb->callback([&, load_map] {
    rep.command = "map kpeb";
    act = [&, load_map](Report& r) {
      const auto phi = load_map(r, "file", o.file);
      if (!o.ensemble.empty()) {
        const auto ens = io::ensemble_from_json(load_input(r, "ensemble", o.ensemble));
        const bool ok = k_peb_certify(phi, ens);
        r.result["certified"] = ok;
        r.result["k"] = ens.k;
        r.summary = ok ? "certified " + std::to_string(ens.k) + "-PEB" : "ensemble does not reconstruct the Choi state";
        return;
      }
      std::optional<BipartiteOperator> w;
      if (!o.witness.empty()) w = io::operator_from_json(load_input(r, "witness", o.witness));
      const auto c = k_peb_refute(phi, o.k, seesaw(o, r), w);
      r.result["pairing"] = c.pairing;
      r.result["refute_tol"] = c.refute_tol;
      r.result["block_positivity"] = verdict_json(c.block_pos_evidence);
      r.result["valid"] = c.valid();
      r.result["witness"] = io::to_json(c.witness);
      r.code = c.valid() ? kViolation : kComputed;
      r.summary = std::string(c.valid() ? "not k-PEB" : "no refutation") + ", Tr(W J/Tr J) = " + fmt(c.pairing);
    };
  });

  auto* idk = leaf("idk-norm", "||id_k (x) Phi|| (lower bound)");
  idk->add_option("file", o.file, "map JSON")->required();
  idk->callback([&, load_map] {
    rep.command = "map idk-norm";
    act = [&, load_map](Report& r) {
      const auto phi = load_map(r, "file", o.file);
      const auto e = idk_op_norm(phi, o.k, seesaw(o, r));
      r.result = map_estimate_json(e);
      r.summary = "||id_k (x) Phi|| = " + fmt(e.value) + " (" + to_string(e.direction) + ")";
    };
  });

  auto* tr = leaf("trnorm-h", "Hermitian induced trace norm of id_k (x) Phi (lower bound)");
  tr->add_option("file", o.file, "map JSON")->required();
  tr->callback([&, load_map] {
    rep.command = "map trnorm-h";
    act = [&, load_map](Report& r) {
      const auto phi = load_map(r, "file", o.file);
      const auto e = hermitian_trace_norm(phi, o.k, seesaw(o, r));
      r.result = map_estimate_json(e);
      if (e.attaining_input) {
        r.result["attaining_input"] = io::to_json(ComplexVector(e.attaining_input->col(0)), Dims{o.k, phi.in_dim()});
      }
      r.summary = "||id_k (x) Phi||_tr^H = " + fmt(e.value) + " (" + to_string(e.direction) + ")";
    };
  });

  auto* det = leaf("detect", "contraction test for Schmidt number > k");
  det->add_option("--state", o.state, "density operator JSON")->required();
  det->add_option("--map", o.map, "map JSON")->required();
  det->add_flag("--wrap", o.wrap, "wrap the map into the trace-preserving detection map first");
  det->callback([&, load_map] {
    rep.command = "map detect";
    act = [&, load_map](Report& r) {
      const auto rho = io::operator_from_json(load_input(r, "state", o.state));
      const auto psi = load_map(r, "map", o.map);
      const auto cfg = seesaw(o, r);
      r.parameters["wrap"] = o.wrap;
      const MapRepr phi = o.wrap ? detection_map(psi, cfg) : psi;
      const auto c = sn_contraction_test(rho, phi, o.k, cfg);
      r.result["detected"] = c.detected;
      r.result["output_trace_norm"] = c.output_trace_norm;
      r.result["map_norm"] = c.map_norm;
      if (c.negative_direction) {
        r.result["negative_direction"] = io::to_json(*c.negative_direction, Dims{rho.dims().m, phi.out_dim()});
      }
      if (o.wrap) r.result["map"] = io::to_json(phi);
      r.code = c.detected ? kViolation : kComputed;
      r.summary = std::string(c.detected ? "detected: SN > " : "not detected at k = ") + std::to_string(o.k) +
                  ", ||(id (x) Phi)(rho)||_tr = " + fmt(c.output_trace_norm);
    };
  });
}

// ---- oracle -----------------------------------------------------------

void oracle_commands(CLI::App& app, Options& o, Action& act, Report& rep) {
  auto* orc = app.add_subcommand("oracle", "brute-force cross-checks and re-evaluation")->require_subcommand(1);
  auto sampled = [&](const char* name, const char* help, std::function<double(Report&, const OracleConfig&)> f) {
    auto* s = orc->add_subcommand(name, help);
    s->add_option("file", o.file, "operator or map JSON")->required();
    s->add_option("--k", o.k, "Schmidt rank bound");
    s->add_option("--seed", o.seed, "RNG seed");
    s->add_option("--samples", o.samples, "random samples");
    s->add_option("--polish", o.polish, "polish steps per polished sample");
    s->add_option("--warmup", o.warmup, "samples always polished");
    return s->callback([&, name, f] {
      rep.command = std::string("oracle ") + name;
      act = [&, f, name](Report& r) {
        const auto cfg = oracle_cfg(o, r);
        const double v = f(r, cfg);
        r.result["value"] = v;
        r.result["direction"] = std::string(name) == "blockmin" ? "upper" : "lower";
        r.summary = std::string("oracle ") + name + " = " + fmt(v);
      };
    });
  };
  auto op = [&](Report& r) { return io::operator_from_json(load_input(r, "file", o.file)); };
  sampled("sk", "sampled S(k) norm", [&, op](Report& r, const OracleConfig& c) { return brute_sk_norm(op(r), o.k, c); });
  sampled("omin", "sampled OMIN norm",
          [&, op](Report& r, const OracleConfig& c) { return brute_omin_norm(op(r), o.k, c); });
  sampled("minorder", "sampled minimal order norm",
          [&, op](Report& r, const OracleConfig& c) { return brute_min_order_norm(op(r), o.k, c); });
  sampled("blockmin", "sampled minimum of <v|X|v> over SR-k vectors",
          [&, op](Report& r, const OracleConfig& c) { return brute_block_min(op(r), o.k, c); });
  sampled("idk", "sampled ||id_k (x) Phi||", [&](Report& r, const OracleConfig& c) {
    return brute_idk_norm(io::map_from_json(load_input(r, "file", o.file)), o.k, c);
  });
  sampled("stabilized", "sampled level-m Hermitian form value", [&](Report& r, const OracleConfig& c) {
    const int m = o.m > 0 ? o.m : o.k;
    r.parameters["m"] = m;
    return brute_stabilized_form(io::map_from_json(load_input(r, "file", o.file)), m, o.k, c);
  })->add_option("--m", o.m, "ancilla dimension (default k)");

  auto* ex = orc->add_subcommand("expect", "<v|X|v> for a witness vector");
  ex->add_option("file", o.file, "operator or map JSON")->required();
  ex->add_option("--vector", o.vector, "vector JSON")->required();
  ex->callback([&] {
    rep.command = "oracle expect";
    act = [&](Report& r) {
      const auto x = io::operator_from_json(load_input(r, "file", o.file));
      Dims d;
      const auto v = io::vector_from_json(load_input(r, "vector", o.vector), &d);
      if (!(d == x.dims())) throw io::FormatError("m", "vector dims do not match the operator");
      const double val = expectation(x.matrix(), v);
      r.result["value"] = val;
      r.summary = "<v|X|v> = " + fmt(val);
    };
  });

  auto* pr = orc->add_subcommand("pairing", "|<v|X|w>| for a witness pair");
  pr->add_option("file", o.file, "operator JSON")->required();
  pr->add_option("--left", o.left, "vector JSON")->required();
  pr->add_option("--right", o.right, "vector JSON")->required();
  pr->callback([&] {
    rep.command = "oracle pairing";
    act = [&](Report& r) {
      const auto x = io::operator_from_json(load_input(r, "file", o.file));
      Dims dl, dr;
      const auto v = io::vector_from_json(load_input(r, "left", o.left), &dl);
      const auto w = io::vector_from_json(load_input(r, "right", o.right), &dr);
      if (!(dl == x.dims()) || !(dr == x.dims())) throw io::FormatError("m", "vector dims do not match the operator");
      const double val = pairing_value(x.matrix(), v, w);
      r.result["value"] = val;
      r.summary = "|<v|X|w>| = " + fmt(val);
    };
  });

  auto* tp = orc->add_subcommand("trace-pairing", "Tr(W rho)");
  tp->add_option("--witness", o.witness, "witness operator JSON")->required();
  tp->add_option("--state", o.state, "operator or map JSON")->required();
  tp->add_flag("--normalize", o.normalize, "divide the state by its trace");
  tp->callback([&] {
    rep.command = "oracle trace-pairing";
    act = [&](Report& r) {
      const auto w = io::operator_from_json(load_input(r, "witness", o.witness));
      const auto rho = io::operator_from_json(load_input(r, "state", o.state));
      if (!(w.dims() == rho.dims())) throw io::FormatError("m", "witness and state dims differ");
      r.parameters["normalize"] = o.normalize;
      double val = (w.matrix() * rho.matrix()).trace().real();
      if (o.normalize) val /= rho.matrix().trace().real();
      r.result["value"] = val;
      r.summary = "Tr(W rho) = " + fmt(val);
    };
  });

  auto* tn = orc->add_subcommand("trnorm", "||(id_m (x) Phi)(rho)||_tr");
  tn->add_option("--map", o.map, "map JSON")->required();
  tn->add_option("--state", o.state, "operator JSON")->required();
  tn->callback([&] {
    rep.command = "oracle trnorm";
    act = [&](Report& r) {
      const auto phi = io::map_from_json(load_input(r, "map", o.map));
      const auto rho = io::operator_from_json(load_input(r, "state", o.state));
      if (rho.dims().n != phi.in_dim()) throw io::FormatError("n", "state does not match the map input");
      const double val = trace_norm(phi.apply_id(rho.dims().m, rho.matrix()));
      r.result["value"] = val;
      r.summary = "||(id (x) Phi)(rho)||_tr = " + fmt(val);
    };
  });
}

// ---- fixtures ---------------------------------------------------------

void fixture_commands(CLI::App& app, Options& o, Action& act, Report& rep) {
  auto* fx = app.add_subcommand("fixtures", "built-in test operators and maps")->require_subcommand(1);
  auto* em = fx->add_subcommand("emit", "print a fixture file to standard output");
  em->add_option("name", o.fixture,
                 "example51 | identity | swap | maxent | isotropic | reduction-witness | transpose-map | "
                 "reduction-map | depolarizing-map")
      ->required();
  em->add_option("--n", o.n, "local dimension");
  em->add_option("--m", o.m, "left dimension (identity; default n)");
  em->add_option("--k", o.k, "Schmidt rank (reduction-witness)");
  em->add_option("--p", o.p, "reduction map parameter");
  em->add_option("--f", o.fidelity, "isotropic fidelity");
  em->callback([&] {
    rep.command = "fixtures emit";
    rep.raw = true;
    act = [&](Report& r) {
      const int n = o.n;
      if (n < 1) throw io::FormatError("--n", "must be positive");
      const std::string& f = o.fixture;
      if (f == "example51") {
        r.result = io::to_json(entangled_shift_outer(n));
      } else if (f == "identity") {
        const int m = o.m > 0 ? o.m : n;
        r.result = io::to_json(BipartiteOperator(ComplexMatrix::Identity(m * n, m * n), Dims{m, n}));
      } else if (f == "swap") {
        r.result = io::to_json(BipartiteOperator(swap_operator(n), Dims{n, n}));
      } else if (f == "maxent") {
        r.result = io::to_json(BipartiteOperator(projector(maximally_entangled(n)), Dims{n, n}));
      } else if (f == "isotropic") {
        r.result = io::to_json(isotropic_state(o.fidelity, n));
      } else if (f == "reduction-witness") {
        r.result = io::to_json(reduction_witness(n, o.k));
      } else if (f == "transpose-map") {
        r.result = io::to_json(MapRepr::transpose(n));
      } else if (f == "reduction-map") {
        r.result = io::to_json(MapRepr::reduction(n, o.p));
      } else if (f == "depolarizing-map") {
        r.result = io::to_json(MapRepr::depolarizing(n, n));
      } else {
        throw io::FormatError("name", "unknown fixture '" + f + "'");
      }
      r.summary = "fixture " + f;
    };
  });
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("SCHMIDT_NORMS_SEED");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (errno != 0 || *end != '\0' || s[0] == '-') {
    throw io::FormatError("SCHMIDT_NORMS_SEED", "expected an unsigned integer");
  }
  return v;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  Report rep;
  Action act;
  try {
    if (auto s = env_seed()) o.seed = *s;
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  CLI::App app{"Schmidt-rank-constrained norms, block positivity and Schmidt number certificates",
               "schmidt-norms"};
  app.set_version_flag("--version", SCHMIDT_VERSION);
  app.require_subcommand(1);
  norm_commands(app, o, act, rep);
  cone_commands(app, o, act, rep);
  map_commands(app, o, act, rep);
  oracle_commands(app, o, act, rep);
  fixture_commands(app, o, act, rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kComputed : kInputError;
  }
  if (!act) {
    err << "error: no command\n";
    return kInputError;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    act(rep);
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

  if (rep.raw) {
    out << rep.result.dump(2) << "\n";
    err << rep.summary << "\n";
    return kComputed;
  }
  Json report;
  report["command"] = rep.command;
  report["inputs"] = rep.inputs;
  report["parameters"] = rep.parameters;
  report["result"] = rep.result;
  report["exit_code"] = rep.code;
  report["runtime_ms"] = ms;
  report["version"] = SCHMIDT_VERSION;
  out << report.dump(2) << "\n";
  err << rep.command << ": " << rep.summary << "\n";
  return rep.code;
}

}  // namespace schmidt::cli
