#include "cspstream/cspstream.h"

#include "cspstream/analysis.hpp"
#include "cspstream/formats.hpp"
#include "cspstream/genhard.hpp"
#include "cspstream/polarize.hpp"
#include "cspstream/separability.hpp"
#include "cspstream/stream_solver.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

using namespace cspstream;
using nlohmann::json;

struct csp_function {
  TruthTable f;
};

struct csp_verdict {
  TruthTable f;
  Rational gamma;
  Rational beta;
  SeparationVerdict v;
};

struct csp_dist {
  Dist d;
};

struct csp_stream {
  Stream s;
};

struct csp_classifier {
  int k;
  ClassifierConfig cfg;
};

struct csp_sketch {
  L1Sketch s;
};

namespace {

thread_local std::string g_last_error;

csp_status fail(csp_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class F>
csp_status guard(F&& body) {
  g_last_error.clear();
  try {
    body();
    return CSP_OK;
  } catch (const ParseError& e) {
    return fail(CSP_ERR_PARSE, e.what());
  } catch (const IoError& e) {
    return fail(CSP_ERR_IO, e.what());
  } catch (const TurnstileError& e) {
    return fail(CSP_ERR_TURNSTILE, e.what());
  } catch (const IndeterminateError& e) {
    return fail(CSP_ERR_INDETERMINATE, e.what());
  } catch (const ZeroWeightError& e) {
    return fail(CSP_ERR_ZERO_WEIGHT, e.what());
  } catch (const TooLargeError& e) {
    return fail(CSP_ERR_TOO_LARGE, e.what());
  } catch (const InconsistentError& e) {
    return fail(CSP_ERR_INTERNAL, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CSP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(CSP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(CSP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CSP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CSP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CSP_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* name) {
  if (!p) throw std::invalid_argument(std::string(name) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Rational rat(const char* text, const char* name) {
  need(text, name);
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(name) + ": " + e.what());
  }
}

json dist_json(const Dist& d) {
  json o = json::object();
  for (unsigned b = 0; b < d.p.size(); ++b) {
    if (d.p[b] != 0) o[point_string(b, d.k)] = to_string(d.p[b]);
  }
  return o;
}

json rational_list(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

}  // namespace

extern "C" {

const char* csp_last_error(void) { return g_last_error.c_str(); }

const char* csp_status_name(csp_status s) {
  switch (s) {
    case CSP_OK: return "ok";
    case CSP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CSP_ERR_PARSE: return "parse error";
    case CSP_ERR_IO: return "i/o error";
    case CSP_ERR_TURNSTILE: return "strict-turnstile violation";
    case CSP_ERR_INDETERMINATE: return "indeterminate";
    case CSP_ERR_ZERO_WEIGHT: return "zero total weight";
    case CSP_ERR_TOO_LARGE: return "too large";
    case CSP_ERR_HARD: return "hard pair";
    case CSP_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

void csp_string_free(char* s) { std::free(s); }

csp_status csp_function_new(const char* bits, int k, csp_function** out) {
  return guard([&] {
    need(bits, "bits");
    need(out, "out");
    *out = new csp_function{TruthTable::from_bitstring(bits, k)};
  });
}

void csp_function_free(csp_function* f) { delete f; }

int csp_function_arity(const csp_function* f) { return f ? f->f.arity() : 0; }

csp_status csp_function_rho(const csp_function* f, char** out) {
  return guard([&] {
    need(f, "f");
    need(out, "out");
    *out = dup(to_string(rho(f->f)));
  });
}

csp_status csp_decide(const csp_function* f, const char* gamma, const char* beta, const char* tol, csp_verdict** out) {
  return guard([&] {
    need(f, "f");
    need(out, "out");
    DecideOptions opts;
    if (tol) opts.tol = rat(tol, "tol");
    auto v = std::make_unique<csp_verdict>();
    v->f = f->f;
    v->gamma = rat(gamma, "gamma");
    v->beta = rat(beta, "beta");
    v->v = decide(f->f, v->gamma, v->beta, opts);
    *out = v.release();
  });
}

void csp_verdict_free(csp_verdict* v) { delete v; }

int csp_verdict_is_easy(const csp_verdict* v) { return v && v->v.tag == VerdictTag::Easy; }

csp_status csp_verdict_json(const csp_verdict* v, char** out) {
  return guard([&] {
    need(v, "verdict");
    need(out, "out");
    json j = {{"f", v->f.bitstring()},
              {"k", v->f.arity()},
              {"gamma", to_string(v->gamma)},
              {"beta", to_string(v->beta)},
              {"cuts", v->v.cuts.size()}};
    if (v->v.tag == VerdictTag::Easy) {
      j["verdict"] = "EASY";
      j["lambda"] = rational_list(v->v.easy.lambda);
      j["tau_y"] = to_string(v->v.easy.tau_y);
      j["tau_n"] = to_string(v->v.easy.tau_n);
    } else {
      j["verdict"] = "HARD";
      j["mu"] = rational_list(v->v.hard.mu);
      j["dy"] = dist_json(v->v.hard.dy);
      j["dn"] = dist_json(v->v.hard.dn);
      j["slack"] = to_string(v->v.hard.slack);
    }
    *out = dup(j.dump());
  });
}

csp_status csp_dist_new(int k, const char* const* probs, csp_dist** out) {
  return guard([&] {
    need(probs, "probs");
    need(out, "out");
    if (k < 1 || k > kMaxArity) throw std::invalid_argument("k must be in [1, 6]");
    Dist d;
    d.k = k;
    for (unsigned b = 0; b < (1u << k); ++b) d.p.push_back(rat(probs[b], "probability"));
    validate(d);
    *out = new csp_dist{std::move(d)};
  });
}

csp_status csp_dist_read(const char* path, csp_dist** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new csp_dist{read_dist_file(path)};
  });
}

csp_status csp_dist_parse(const char* text, csp_dist** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    std::istringstream in(text);
    *out = new csp_dist{read_dist(in)};
  });
}

csp_status csp_dist_to_text(const csp_dist* d, char** out) {
  return guard([&] {
    need(d, "dist");
    need(out, "out");
    std::ostringstream os;
    write_dist(os, d->d);
    *out = dup(os.str());
  });
}

void csp_dist_free(csp_dist* d) { delete d; }

csp_status csp_stream_read(const char* path, csp_stream** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new csp_stream{read_stream_file(path)};
  });
}

csp_status csp_stream_parse(const char* text, csp_stream** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    std::istringstream in(text);
    *out = new csp_stream{read_stream(in)};
  });
}

csp_status csp_stream_write(const csp_stream* s, const char* path) {
  return guard([&] {
    need(s, "stream");
    need(path, "path");
    write_stream_file(path, s->s);
  });
}

csp_status csp_stream_to_text(const csp_stream* s, char** out) {
  return guard([&] {
    need(s, "stream");
    need(out, "out");
    std::ostringstream os;
    write_stream(os, s->s);
    *out = dup(os.str());
  });
}

void csp_stream_free(csp_stream* s) { delete s; }
size_t csp_stream_n(const csp_stream* s) { return s ? s->s.n : 0; }
int csp_stream_k(const csp_stream* s) { return s ? s->s.k : 0; }
size_t csp_stream_size(const csp_stream* s) { return s ? s->s.events.size() : 0; }

csp_status csp_stream_validate(const csp_stream* s, size_t* valid) {
  return guard([&] {
    need(s, "stream");
    const std::size_t p = valid_prefix(s->s);
    if (valid) *valid = p;
    if (p != s->s.events.size()) {
      throw TurnstileError("delete of a constraint with zero weight at event " + std::to_string(p + 1), p);
    }
  });
}

csp_status csp_brute(const csp_function* f, const csp_stream* s, char** out) {
  return guard([&] {
    need(f, "f");
    need(s, "stream");
    need(out, "out");
    if (f->f.arity() != s->s.k) throw std::invalid_argument("function arity does not match the stream");
    const Instance psi = to_instance(s->s);
    auto [val, sigma] = opt_value(f->f, psi);
    std::string a;
    for (int x : sigma) a.push_back(x > 0 ? '+' : '-');
    json j = {{"value", to_string(val)}, {"value_double", val.get_d()}, {"assignment", a}};
    *out = dup(j.dump());
  });
}

csp_status csp_classifier_from_verdict(const csp_verdict* v, uint64_t seed, size_t reps, csp_classifier** out) {
  need(v, "verdict");
  if (v->v.tag != VerdictTag::Easy) {
    return fail(CSP_ERR_HARD, "(gamma, beta) is a hard pair; no streaming classifier exists");
  }
  return guard([&] {
    need(out, "out");
    if (v->v.easy.lambda.empty()) throw std::invalid_argument("verdict carries no hyperplane");
    *out = new csp_classifier{v->f.arity(), make_config(v->v.easy, seed, reps ? reps : 9)};
  });
}

csp_status csp_classifier_new(int k, const char* const* lambda, const char* tau_y, const char* tau_n, uint64_t seed,
                              size_t reps, csp_classifier** out) {
  return guard([&] {
    need(lambda, "lambda");
    need(out, "out");
    if (k < 1 || k > kMaxArity) throw std::invalid_argument("k must be in [1, 6]");
    Hyperplane h;
    for (int t = 0; t < k; ++t) h.lambda.push_back(rat(lambda[t], "lambda"));
    h.tau_y = rat(tau_y, "tau_y");
    h.tau_n = rat(tau_n, "tau_n");
    *out = new csp_classifier{k, make_config(h, seed, reps ? reps : 9)};
  });
}

void csp_classifier_free(csp_classifier* c) { delete c; }

csp_status csp_classifier_json(const csp_classifier* c, char** out) {
  return guard([&] {
    need(c, "classifier");
    need(out, "out");
    json j = {{"lambda", rational_list(c->cfg.lambda)},
              {"tau_y", to_string(c->cfg.tau_y)},
              {"tau_n", to_string(c->cfg.tau_n)},
              {"epsilon", c->cfg.epsilon},
              {"threshold", to_string(c->cfg.threshold)},
              {"repetitions", c->cfg.repetitions},
              {"seed", c->cfg.seed}};
    *out = dup(j.dump());
  });
}

csp_status csp_classify(const csp_classifier* c, const csp_stream* s, int exact, csp_classify_result* out) {
  return guard([&] {
    need(c, "classifier");
    need(s, "stream");
    need(out, "out");
    if (c->k != s->s.k) throw std::invalid_argument("classifier arity does not match the stream");
    ClassifyResult r;
    if (exact) {
      r = classify_exact(to_instance(s->s), c->cfg);
      r.events = s->s.events.size();
    } else {
      r = classify_stream(s->s, c->cfg);
    }
    out->yes = r.answer == Answer::Yes;
    out->b_estimate = r.b_estimate;
    out->threshold = r.threshold;
    out->events = r.events;
  });
}

csp_status csp_estimate(const csp_function* f, const csp_stream* s, const char* eps, uint64_t seed, int exact,
                        char** out) {
  return guard([&] {
    need(f, "f");
    need(s, "stream");
    need(out, "out");
    const ValueEstimate v = estimate_value(s->s, f->f, rat(eps, "eps"), seed, exact != 0);
    json j = {{"beta_prime", to_string(v.beta_prime)},
              {"beta_prime_double", v.beta_prime.get_d()},
              {"distinguishers", v.distinguishers},
              {"accepted", v.accepted}};
    *out = dup(j.dump());
  });
}

csp_status csp_sketch_new(size_t n, double epsilon, uint64_t seed, csp_sketch** out) {
  return guard([&] {
    need(out, "out");
    *out = new csp_sketch{L1Sketch(n, epsilon, seed)};
  });
}

void csp_sketch_free(csp_sketch* s) { delete s; }

csp_status csp_sketch_update(csp_sketch* s, size_t i, int64_t v) {
  return guard([&] {
    need(s, "sketch");
    s->s.update(i, v);
  });
}

csp_status csp_sketch_merge(csp_sketch* s, const csp_sketch* other) {
  return guard([&] {
    need(s, "sketch");
    need(other, "other");
    s->s.merge(other->s);
  });
}

double csp_sketch_estimate(const csp_sketch* s) { return s ? s->s.estimate() : 0.0; }
size_t csp_sketch_rows(const csp_sketch* s) { return s ? s->s.rows() : 0; }

csp_status csp_generate(const csp_gen_params* p, csp_stream** out, char** metadata) {
  return guard([&] {
    need(p, "params");
    need(out, "out");
    need(p->mask, "mask");
    GenParams g;
    g.n = p->n;
    g.k = p->k;
    g.alpha_m = rat(p->alpha_m, "alpha_m");
    g.T = p->mode == CSP_GEN_RMD ? 1 : p->T;
    g.mask_dist = p->mask->d;
    if (p->pad) g.pad_dist = p->pad->d;
    g.tau = p->tau ? rat(p->tau, "tau") : Rational(0);
    g.seed = p->seed;
    if (p->mode != CSP_GEN_PADDED && g.tau != 0) throw std::invalid_argument("tau applies to padded mode only");
    Generated r;
    const char* mode = "";
    switch (p->mode) {
      case CSP_GEN_RMD: r = gen_rmd(g); mode = "rmd"; break;
      case CSP_GEN_STREAMING: r = gen_streaming_rmd(g); mode = "streaming"; break;
      case CSP_GEN_PADDED: r = gen_padded(g); mode = "padded"; break;
      default: throw std::invalid_argument("unknown generator mode");
    }
    if (metadata) {
      GenMetadata m;
      m.mode = mode;
      m.n = g.n;
      m.k = g.k;
      m.T = g.T;
      m.alpha_m = g.alpha_m;
      m.tau = g.tau;
      m.seed = g.seed;
      m.prefix = r.prefix;
      if (p->include_x_star) m.x_star = r.x_star;
      m.masks = r.masks;
      std::ostringstream os;
      write_metadata(os, m);
      *metadata = dup(os.str());
    }
    *out = new csp_stream{std::move(r.stream)};
  });
}

csp_status csp_polarize(const csp_dist* d, char** trace) {
  return guard([&] {
    need(d, "dist");
    need(trace, "trace");
    std::ostringstream os;
    write_trace(os, polarize_full(as_function(d->d)));
    *trace = dup(os.str());
  });
}

csp_status csp_approx_ratio(const csp_function* f, const char* grid_step, char** out) {
  return guard([&] {
    need(f, "f");
    need(out, "out");
    const Rational step = grid_step ? rat(grid_step, "grid_step") : Rational(1, 720);
    const RatioResult r = approx_ratio(f->f, step);
    json j = {{"alpha", to_string(r.alpha)},
              {"alpha_double", r.alpha.get_d()},
              {"beta_min", to_string(r.beta_min)},
              {"beta_min_double", r.beta_min.get_d()},
              {"decide_calls", r.decide_calls}};
    *out = dup(j.dump());
  });
}

csp_status csp_ratio_curve(const csp_function* f, const char* beta_step, char** csv) {
  return guard([&] {
    need(f, "f");
    need(csv, "csv");
    const Rational step = rat(beta_step, "beta_step");
    if (step <= 0 || step > 1) throw std::invalid_argument("beta_step must be in (0, 1]");
    std::vector<Rational> grid;
    for (Rational b = step; b <= 1; b += step) grid.push_back(b);
    std::ostringstream os;
    write_ratio_csv(os, ratio_curve(f->f, grid));
    *csv = dup(os.str());
  });
}

csp_status csp_two_and_curves(int samples, char** csv) {
  return guard([&] {
    need(csv, "csv");
    if (samples < 2) throw std::invalid_argument("samples must be at least 2");
    std::ostringstream os;
    write_curves_csv(os, two_and_curves(Rational(1, samples - 1)));
    *csv = dup(os.str());
  });
}

}  // extern "C"
