#include "cspstream/cspstream.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Exit codes.
constexpr int kExitEasy = 0;
constexpr int kExitHard = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitHardPair = 3;
constexpr int kExitUsage = 64;
constexpr int kExitTurnstile = 65;
constexpr int kExitZeroWeight = 66;
constexpr int kExitInternal = 70;

struct Failure {
  csp_status status;
  std::string message;
};

int exit_code(csp_status s) {
  switch (s) {
    case CSP_OK: return 0;
    case CSP_ERR_INVALID_ARGUMENT:
    case CSP_ERR_PARSE:
    case CSP_ERR_IO:
    case CSP_ERR_TOO_LARGE: return kExitUsage;
    case CSP_ERR_TURNSTILE: return kExitTurnstile;
    case CSP_ERR_INDETERMINATE: return kExitIndeterminate;
    case CSP_ERR_ZERO_WEIGHT: return kExitZeroWeight;
    case CSP_ERR_HARD: return kExitHardPair;
    case CSP_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

void check(csp_status s) {
  if (s != CSP_OK) throw Failure{s, csp_last_error()};
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using Function = Handle<csp_function, csp_function_free>;
using Verdict = Handle<csp_verdict, csp_verdict_free>;
using Stream = Handle<csp_stream, csp_stream_free>;
using Dist = Handle<csp_dist, csp_dist_free>;
using Classifier = Handle<csp_classifier, csp_classifier_free>;

std::string take(char* s) {
  std::string out = s ? s : "";
  csp_string_free(s);
  return out;
}

int arity_of(const std::string& bits, int k) {
  if (k > 0) return k;
  for (int j = 1; j <= 6; ++j) {
    if (bits.size() == (std::size_t{1} << j)) return j;
  }
  throw Failure{CSP_ERR_INVALID_ARGUMENT, "truth table length must be 2^k with 1 <= k <= 6"};
}

void load_function(Function& f, const std::string& bits, int k) { check(csp_function_new(bits.c_str(), arity_of(bits, k), f.out())); }

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) | rd();
  std::cerr << "seed=" << s << '\n';
  return s;
}

// "uniform", "ones" (point mass at 1^k) or a DIST file.
void load_dist(Dist& d, const std::string& source, int k) {
  if (source == "uniform" || source == "ones") {
    const std::size_t size = std::size_t{1} << k;
    std::vector<std::string> text(size, "0");
    if (source == "uniform") {
      text.assign(size, "1/" + std::to_string(size));
    } else {
      text[size - 1] = "1";
    }
    std::vector<const char*> ptr;
    for (const auto& t : text) ptr.push_back(t.c_str());
    check(csp_dist_new(k, ptr.data(), d.out()));
  } else {
    check(csp_dist_read(source.c_str(), d.out()));
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out || !(out << text)) throw Failure{CSP_ERR_IO, "cannot write " + path};
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

struct ClassifyOpts {
  std::string f;
  int k = 0;
  std::string gamma, beta, tol;
};

int run_classify(const ClassifyOpts& o) {
  Function f;
  load_function(f, o.f, o.k);
  Verdict v;
  const csp_status s = csp_decide(f.get(), o.gamma.c_str(), o.beta.c_str(), o.tol.empty() ? nullptr : o.tol.c_str(), v.out());
  if (s == CSP_ERR_INDETERMINATE) {
    std::cout << "INDETERMINATE\n";
    std::cerr << "error: " << csp_last_error() << '\n';
    return kExitIndeterminate;
  }
  check(s);
  char* js = nullptr;
  check(csp_verdict_json(v.get(), &js));
  const bool easy = csp_verdict_is_easy(v.get());
  std::cout << (easy ? "EASY" : "HARD") << '\n' << take(js) << '\n';
  return easy ? kExitEasy : kExitHard;
}

struct SolveOpts {
  std::string f;
  int k = 0;
  std::string gamma, beta, tol, stream, lambda, tau_y, tau_n;
  bool exact = false;
  std::optional<std::uint64_t> seed;
  std::size_t reps = 9;
};

int run_solve(const SolveOpts& o) {
  Stream st;
  check(csp_stream_read(o.stream.c_str(), st.out()));
  const std::uint64_t seed = o.exact ? o.seed.value_or(0) : resolve_seed(o.seed);
  Classifier c;
  if (!o.lambda.empty()) {
    if (o.tau_y.empty() || o.tau_n.empty()) throw Failure{CSP_ERR_INVALID_ARGUMENT, "--lambda needs --tau-y and --tau-n"};
    const auto parts = split_commas(o.lambda);
    std::vector<const char*> ptr;
    for (const auto& p : parts) ptr.push_back(p.c_str());
    if (static_cast<int>(parts.size()) != csp_stream_k(st.get())) {
      throw Failure{CSP_ERR_INVALID_ARGUMENT, "--lambda needs k comma-separated values"};
    }
    check(csp_classifier_new(csp_stream_k(st.get()), ptr.data(), o.tau_y.c_str(), o.tau_n.c_str(), seed, o.reps, c.out()));
  } else {
    if (o.f.empty() || o.gamma.empty() || o.beta.empty()) {
      throw Failure{CSP_ERR_INVALID_ARGUMENT, "give --f, --gamma and --beta, or an explicit --lambda/--tau-y/--tau-n"};
    }
    Function f;
    load_function(f, o.f, o.k);
    Verdict v;
    check(csp_decide(f.get(), o.gamma.c_str(), o.beta.c_str(), o.tol.empty() ? nullptr : o.tol.c_str(), v.out()));
    check(csp_classifier_from_verdict(v.get(), seed, o.reps, c.out()));
  }
  csp_classify_result r{};
  check(csp_classify(c.get(), st.get(), o.exact, &r));
  char buf[256];
  std::snprintf(buf, sizeof buf, "{\"answer\":\"%s\",\"b\":%.12g,\"threshold\":%.12g,\"events\":%zu,\"mode\":\"%s\"}",
                r.yes ? "YES" : "NO", r.b_estimate, r.threshold, r.events, o.exact ? "exact" : "sketch");
  std::cout << (r.yes ? "YES" : "NO") << '\n' << buf << '\n';
  return 0;
}

struct GenOpts {
  std::string mode = "streaming";
  std::size_t n = 0;
  int k = 2;
  std::string alpha_m, tau = "0", mask = "uniform", pad, out, meta;
  std::size_t T = 1;
  std::optional<std::uint64_t> seed;
  bool hide_x_star = false;
};

int run_gen(const GenOpts& o) {
  csp_gen_params p{};
  if (o.mode == "rmd") {
    p.mode = CSP_GEN_RMD;
  } else if (o.mode == "streaming") {
    p.mode = CSP_GEN_STREAMING;
  } else if (o.mode == "padded") {
    p.mode = CSP_GEN_PADDED;
  } else {
    throw Failure{CSP_ERR_INVALID_ARGUMENT, "--mode must be rmd, streaming or padded"};
  }
  Dist mask, pad;
  load_dist(mask, o.mask, o.k);
  if (!o.pad.empty()) load_dist(pad, o.pad, o.k);
  const std::string alpha = o.alpha_m.empty() ? "1/" + std::to_string(o.k) : o.alpha_m;
  p.n = o.n;
  p.k = o.k;
  p.alpha_m = alpha.c_str();
  p.T = o.T;
  p.tau = o.tau.c_str();
  p.seed = resolve_seed(o.seed);
  p.mask = mask.get();
  p.pad = pad.get();
  p.include_x_star = !o.hide_x_star;
  Stream st;
  char* meta = nullptr;
  check(csp_generate(&p, st.out(), o.meta.empty() ? nullptr : &meta));
  const std::string meta_text = take(meta);
  char* text = nullptr;
  check(csp_stream_to_text(st.get(), &text));
  write_text(o.out, take(text));
  if (!o.meta.empty()) write_text(o.meta, meta_text);
  return 0;
}

int run_polarize(const std::string& dist, const std::string& out) {
  Dist d;
  check(csp_dist_read(dist.c_str(), d.out()));
  char* trace = nullptr;
  check(csp_polarize(d.get(), &trace));
  write_text(out, take(trace));
  return 0;
}

struct AnalyzeOpts {
  std::string preset, f, grid = "1/720", beta_step = "1/20", out;
  int k = 0;
  int samples = 50;
  bool no_ratio = false;
};

int run_analyze(const AnalyzeOpts& o) {
  if (o.preset.empty() == o.f.empty()) throw Failure{CSP_ERR_INVALID_ARGUMENT, "give exactly one of --preset and --f"};
  if (!o.preset.empty() && o.preset != "2and") throw Failure{CSP_ERR_INVALID_ARGUMENT, "unknown preset " + o.preset};
  Function f;
  load_function(f, o.preset.empty() ? o.f : "0001", o.preset.empty() ? o.k : 2);
  char* csv = nullptr;
  if (!o.preset.empty()) {
    check(csp_two_and_curves(o.samples, &csv));
  } else {
    check(csp_ratio_curve(f.get(), o.beta_step.c_str(), &csv));
  }
  write_text(o.out, take(csv));
  if (!o.no_ratio) {
    char* summary = nullptr;
    check(csp_approx_ratio(f.get(), o.grid.c_str(), &summary));
    std::cerr << take(summary) << '\n';
  }
  return 0;
}

int run_brute(const std::string& bits, int k, const std::string& instance) {
  Function f;
  load_function(f, bits, k);
  Stream st;
  check(csp_stream_read(instance.c_str(), st.out()));
  char* js = nullptr;
  check(csp_brute(f.get(), st.get(), &js));
  std::cout << take(js) << '\n';
  return 0;
}

struct EstimateOpts {
  std::string f, stream, eps = "1/2";
  int k = 0;
  bool exact = false;
  std::optional<std::uint64_t> seed;
};

int run_estimate(const EstimateOpts& o) {
  Function f;
  load_function(f, o.f, o.k);
  Stream st;
  check(csp_stream_read(o.stream.c_str(), st.out()));
  const std::uint64_t seed = o.exact ? o.seed.value_or(0) : resolve_seed(o.seed);
  char* js = nullptr;
  check(csp_estimate(f.get(), st.get(), o.eps.c_str(), seed, o.exact, &js));
  std::cout << take(js) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming approximability of Max-CSP(f): dichotomy, classifier, generators, polarization"};
  app.require_subcommand(1);

  ClassifyOpts co;
  auto* classify = app.add_subcommand("classify", "Decide whether (gamma, beta)-Max-CSP(f) is streaming-easy");
  classify->add_option("--f", co.f, "Truth table, character i = f at index i")->required();
  classify->add_option("--k", co.k, "Arity (default: from the table length)");
  classify->add_option("--gamma", co.gamma, "Rational p/q or decimal")->required();
  classify->add_option("--beta", co.beta, "Rational p/q or decimal")->required();
  classify->add_option("--tol", co.tol, "Cutting-plane tolerance (default 1e-9)");

  SolveOpts so;
  auto* solve = app.add_subcommand("solve", "Run the bias classifier on a stream");
  solve->add_option("--f", so.f, "Truth table");
  solve->add_option("--k", so.k, "Arity");
  solve->add_option("--gamma", so.gamma);
  solve->add_option("--beta", so.beta);
  solve->add_option("--tol", so.tol);
  solve->add_option("--stream", so.stream, "CSPSTREAM v1 file")->required();
  solve->add_flag("--exact", so.exact, "Exact bias instead of sketches");
  solve->add_option("--seed", so.seed);
  solve->add_option("--reps", so.reps, "Independent sketches (median)");
  solve->add_option("--lambda", so.lambda, "Explicit hyperplane, comma-separated");
  solve->add_option("--tau-y", so.tau_y);
  solve->add_option("--tau-n", so.tau_n);

  GenOpts go;
  auto* gen = app.add_subcommand("gen", "Generate an RMD-family instance stream");
  gen->add_option("--mode", go.mode, "rmd | streaming | padded");
  gen->add_option("--n", go.n)->required();
  gen->add_option("--k", go.k);
  gen->add_option("--alpha-m", go.alpha_m, "Edges per block over n (default 1/k)");
  gen->add_option("--T", go.T, "Blocks");
  gen->add_option("--mask", go.mask, "uniform | ones | DIST file");
  gen->add_option("--pad", go.pad, "uniform | ones | DIST file");
  gen->add_option("--tau", go.tau, "Padding fraction");
  gen->add_option("--seed", go.seed);
  gen->add_option("--out", go.out, "Stream file (default stdout)");
  gen->add_option("--meta", go.meta, "JSON-lines metadata sidecar");
  gen->add_flag("--hide-x-star", go.hide_x_star, "Omit the planted assignment from the metadata");

  std::string pol_dist, pol_out;
  auto* pol = app.add_subcommand("polarize", "Polarize a distribution into its canonical chain form");
  pol->add_option("--dist", pol_dist, "DIST v1 file")->required();
  pol->add_option("--out", pol_out, "Trace file (default stdout)");

  AnalyzeOpts ao;
  auto* analyze = app.add_subcommand("analyze", "Approximation-ratio sweeps and curves (CSV)");
  analyze->add_option("--preset", ao.preset, "2and");
  analyze->add_option("--f", ao.f);
  analyze->add_option("--k", ao.k);
  analyze->add_option("--grid", ao.grid, "Beta grid step for alpha");
  analyze->add_option("--samples", ao.samples, "Curve samples in mu (preset)");
  analyze->add_option("--beta-step", ao.beta_step, "Beta step of the ratio CSV");
  analyze->add_option("--out", ao.out, "CSV file (default stdout)");
  analyze->add_flag("--no-ratio", ao.no_ratio, "Skip the alpha summary");

  std::string br_f, br_instance;
  int br_k = 0;
  auto* brute = app.add_subcommand("brute", "Exact optimum by enumeration");
  brute->add_option("--f", br_f)->required();
  brute->add_option("--k", br_k);
  brute->add_option("--instance", br_instance, "CSPSTREAM v1 file")->required();

  EstimateOpts eo;
  auto* estimate = app.add_subcommand("estimate", "Estimate the CSP value with the distinguisher grid");
  estimate->add_option("--f", eo.f)->required();
  estimate->add_option("--k", eo.k);
  estimate->add_option("--stream", eo.stream)->required();
  estimate->add_option("--eps", eo.eps);
  estimate->add_flag("--exact", eo.exact);
  estimate->add_option("--seed", eo.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*classify) return run_classify(co);
    if (*solve) return run_solve(so);
    if (*gen) return run_gen(go);
    if (*pol) return run_polarize(pol_dist, pol_out);
    if (*analyze) return run_analyze(ao);
    if (*brute) return run_brute(br_f, br_k, br_instance);
    if (*estimate) return run_estimate(eo);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return exit_code(f.status);
  }
  return kExitUsage;
}
