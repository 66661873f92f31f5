// theta-kernel: command-line front end for the thetakernel library.
//
// Exit codes: 0 success, 1 internal error, 2 bad input, 3 verification failure.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "thetakernel/analysis.hpp"
#include "thetakernel/bqf.hpp"
#include "thetakernel/io.hpp"
#include "thetakernel/thetaop.hpp"

#ifndef THETA_KERNEL_DEFAULT_DATA
#define THETA_KERNEL_DEFAULT_DATA "data"
#endif

namespace fs = std::filesystem;
using namespace thetakernel;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitFailed = 3;

struct RunConfig {
  std::string command;
  std::string suite;
  std::int64_t p = 23;
  std::optional<std::int64_t> q;
  int degree = 1;
  int n = 2;
  std::optional<std::int64_t> bound;
  std::int64_t d_max = 2000;
  std::int64_t disc = -23;
  std::string gram_path;
  std::string out_path;
  int threads = 1;
  bool csv = false;
  bool timing = false;
  bool det = false;
  std::optional<int> cusp;
};

fs::path data_dir() {
  if (const char* env = std::getenv("THETA_KERNEL_DATA"); env && *env) return env;
  return THETA_KERNEL_DEFAULT_DATA;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path);
  if (!out) throw InputError("cannot write " + cfg.out_path);
  out << text;
}

struct ClassEntry {
  std::string label;
  BinaryForm form;
  GramMatrix gram;
  bool ambiguous;
};

// Classes of discriminant -p in canonical order, read from the data directory
// when present and cross-checked against the computed representatives.
std::vector<ClassEntry> load_classes(std::int64_t p) {
  require_odd_prime(p, "class data");
  if (p % 4 != 3) throw InputError("need p = 3 mod 4 so that -p is a discriminant");
  const auto reps = class_representatives(-p);
  const fs::path dir = data_dir() / "classes" / ("disc-" + std::to_string(p));
  std::vector<ClassEntry> out;
  std::size_t pair = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    std::string label;
    if (reps[i].ambiguous)
      label = "s0";
    else if (*reps[i].gl_partner > i)
      label = "s" + std::to_string(++pair);
    else
      label = "s" + std::to_string(pair) + "bar";
    GramMatrix gram = reps[i].form.gram();
    if (fs::exists(dir / (label + ".json"))) {
      gram = read_gram_file((dir / (label + ".json")).string());
      if (!(gram == reps[i].form.gram()))
        throw InputError("data file " + (dir / (label + ".json")).string() + " does not match the reduced class");
    }
    out.push_back({label, reps[i].form, gram, reps[i].ambiguous});
  }
  return out;
}

Json form_params(const ClassEntry& c) { return Json{{"class", c.label}, {"form", form_to_json(c.form)}}; }

// Runs tasks on up to `threads` workers; results keep task order.
std::vector<Report> run_tasks(const std::vector<std::function<Report()>>& tasks, int threads, bool timing) {
  std::vector<Report> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
      if (timing)
        results[i].elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - start)
                                    .count();
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

std::int64_t require_bound(const RunConfig& cfg) {
  if (!cfg.bound) throw InputError("--bound is required");
  if (*cfg.bound < 1) throw InputError("--bound must be at least 1");
  return *cfg.bound;
}

Report outside_bound(const ClassEntry& c, std::int64_t p, std::int64_t bound, const char* claim, const char* ref) {
  Report r{claim, ref, form_params(c), false, bound, {}, {}};
  r.parameters["p"] = p;
  r.parameters["reason"] = "tr(S) exceeds the bound";
  return r;
}

std::vector<std::function<Report()>> kernel_suite(const RunConfig& cfg) {
  const std::int64_t p = cfg.p, bound = require_bound(cfg);
  std::vector<std::function<Report()>> tasks;
  for (const auto& c : load_classes(p)) {
    tasks.push_back([c, p, bound] {
      const QExpansion theta = theta_expansion(c.gram, 2, bound);
      const auto cert = kernel_check(theta, 2, p, bound);
      Report r{"Theta^[2](theta_2S) = 0 mod p", "kernel/r=n", form_params(c), cert.pass, bound, {}, {}};
      r.parameters["p"] = p;
      r.parameters["certificate"] = certificate_to_json(cert);
      return r;
    });
    tasks.push_back([c, p, bound] {
      const QExpansion theta = theta_expansion(c.gram, 2, bound);
      const IndexMatrix s(c.gram.matrix());
      if (!theta.in_bound(s)) return outside_bound(c, p, bound, "Theta^[1](theta_2S) != 0 mod p with witness at S", "kernel/r=1");
      const auto cert = kernel_check(theta, 1, p, bound, s);
      const RationalMatrix expected =
          HalfIntegralMatrix(c.gram.matrix()).to_rational().scaled(Rational(c.ambiguous ? 4 : 2));
      const bool ok = !cert.pass && cert.witness && cert.witness->index == s && cert.witness->coefficient == expected;
      Report r{"Theta^[1](theta_2S) != 0 mod p with witness at S", "kernel/r=1", form_params(c), ok, bound, {}, {}};
      r.parameters["p"] = p;
      r.parameters["expected_coefficient"] = matrix_to_json(expected);
      r.witness = certificate_to_json(cert);
      return r;
    });
    tasks.push_back([c, p, bound] {
      const QExpansion theta = theta_expansion(c.gram, 2, bound);
      const bool ok = kernel_monotonicity_check(theta, 1, p, bound);
      Report r{"kernel monotone in r", "kernel/monotone", form_params(c), ok, bound, {}, {}};
      r.parameters["p"] = p;
      return r;
    });
    tasks.push_back([c, p, bound] {
      const QExpansion theta = theta_det_expansion(c.gram, 2, bound);
      Report r;
      r.parameters = form_params(c);
      r.parameters["p"] = p;
      r.bound = bound;
      if (c.ambiguous) {
        r.claim = "theta_2S,det vanishes (improper automorphism)";
        r.ref = "theta-det/vanishing";
        r.pass = theta.is_zero() && automorphisms(c.gram).has_improper();
      } else {
        const auto cert = kernel_check(theta, 2, p, bound);
        r.claim = "Theta^[2](theta_2S,det) = 0 mod p";
        r.ref = "kernel/det";
        r.pass = cert.pass;
        r.parameters["certificate"] = certificate_to_json(cert);
      }
      return r;
    });
    tasks.push_back([c, p, bound] {
      if (2 * bound < IndexMatrix(c.gram.matrix()).scaled_trace())
        return outside_bound(c, p, bound, "coefficient at S equals #Aut(S) S^[1]", "kernel/leading");
      const auto lead = leading_coefficient_check(c.gram, 1, p, bound);
      Report r{"coefficient at S equals #Aut(S) S^[1]", "kernel/leading", form_params(c), lead.ok(), bound, {}, {}};
      r.parameters["p"] = p;
      r.parameters["automorphisms"] = lead.automorphism_count;
      r.parameters["nonvanishing_claimed"] = lead.nonvanishing_claimed;
      r.parameters["nonzero_mod_p"] = lead.nonzero_mod_p;
      return r;
    });
  }
  return tasks;
}

std::vector<std::function<Report()>> dimensions_suite(const RunConfig& cfg) {
  const std::int64_t p = cfg.p, bound = require_bound(cfg);
  const auto classes = load_classes(p);
  std::vector<std::function<Report()>> tasks;
  for (bool det : {false, true}) {
    tasks.push_back([classes, p, bound, det] {
      std::vector<QExpansion> family;
      for (const auto& c : classes)
        family.push_back(det ? theta_det_expansion(c.gram, 2, bound) : theta_expansion(c.gram, 2, bound));
      const std::size_t h = classes.size();
      const std::size_t expected = det ? (h - 1) / 2 : (h + 1) / 2;
      const std::size_t rank = fp_dimension(family, p, bound);
      std::int64_t stable = bound;
      for (std::int64_t b = bound; b >= 1; --b) {
        if (fp_dimension(family, p, b) != rank) break;
        stable = b;
      }
      Report r{det ? "dim span of theta_2S,det mod p = (h-1)/2" : "dim span of theta_2S mod p = (h+1)/2",
               det ? "dimension/det" : "dimension/theta", Json::object(), rank == expected, bound, {}, {}};
      r.parameters = Json{{"p", p}, {"h", h}, {"rank", rank}, {"expected", expected}, {"stable_from_bound", stable}};
      return r;
    });
  }
  return tasks;
}

std::int64_t km_bound(std::int64_t d_max) {
  std::int64_t b = 1;
  for (std::int64_t d = std::max<std::int64_t>(1, d_max - 3); d <= d_max; ++d) b = std::max(b, km_trace_bound(d));
  return b;
}

Json km_values(const KmReport& k) {
  Json values = Json::array();
  for (const auto& [d, a] : k.nonzero) values.push_back(Json::array({d, rational_to_string(a)}));
  return values;
}

std::vector<std::function<Report()>> km_suite(const RunConfig& cfg) {
  const std::int64_t p = cfg.p, d_max = cfg.d_max;
  if (d_max < 1) throw InputError("--dmax must be positive");
  const auto classes = load_classes(p);
  const std::int64_t bound = km_bound(d_max);
  std::vector<ClassEntry> gl;
  for (const auto& c : classes)
    if (c.label.find("bar") == std::string::npos) gl.push_back(c);

  std::vector<std::vector<Rational>> combos;
  if (p == 23) combos = {{12, -12}};
  else if (p == 31) combos = {{16, -16}};
  else if (p == 47 && gl.size() == 3) combos = {{24, -216, 192}, {0, 24, -24}};
  else
    for (std::size_t i = 1; i < gl.size(); ++i) {
      std::vector<Rational> c(gl.size(), 0);
      c[0] = 1;
      c[i] = -1;
      combos.push_back(c);
    }

  std::vector<std::function<Report()>> tasks;
  for (const auto& combo : combos) {
    tasks.push_back([gl, combo, p, d_max, bound] {
      std::vector<QExpansion> thetas;
      for (const auto& c : gl) thetas.push_back(theta_expansion(c.gram, 2, bound));
      const KmReport k = km_divisibility_check(combo, thetas, p, d_max);
      Json weights = Json::array();
      for (const auto& w : combo) weights.push_back(rational_to_string(w));
      Report r{"a_d(sum c_i theta_2S_i) = 0 mod p for d <= dmax", "km/divisibility", Json::object(), k.pass(), bound,
               {}, {}};
      r.parameters = Json{{"p", p}, {"dmax", d_max}, {"weights", weights}, {"coefficient_sum_ok", k.coefficient_sum_ok},
                          {"nonzero_a_d", km_values(k)}};
      if (k.witness) r.witness = Json{{"d", *k.witness}};
      return r;
    });
  }
  for (const auto& c : classes) {
    tasks.push_back([c, p, d_max, bound] {
      const Rational one[] = {1};
      const QExpansion theta[] = {theta_det_expansion(c.gram, 2, bound)};
      const KmReport k = km_divisibility_check(one, theta, p, d_max, KmMode::vanishing);
      Report r{"a_d(theta_2S,det) = 0 for d <= dmax", "km/det", form_params(c), k.pass(), bound, {}, {}};
      r.parameters["p"] = p;
      r.parameters["dmax"] = d_max;
      if (k.witness) r.witness = Json{{"d", *k.witness}};
      return r;
    });
  }
  for (const auto& c : gl) {
    tasks.push_back([c, p, d_max, bound] {
      const QExpansion theta = theta_expansion(c.gram, 2, bound);
      Json checked = Json::array();
      bool ok = true;
      for (std::int64_t m = 1; m <= 5 && p * m * m <= d_max; ++m) {
        const Rational direct = km_average(theta, p * m * m);
        const std::int64_t hnf = hermite_class_count(m);
        ok = ok && direct == hnf;
        checked.push_back(Json{{"d", p * m * m}, {"class_sum", rational_to_string(direct)}, {"hermite_count", hnf}});
      }
      Report r{"a_(p m^2)(theta_2S) equals the Hermite class count", "km/oracle", form_params(c), ok, bound, {}, {}};
      r.parameters["p"] = p;
      r.parameters["values"] = checked;
      return r;
    });
  }
  return tasks;
}

std::vector<std::function<Report()>> witt_suite(const RunConfig& cfg) {
  const std::int64_t p = cfg.p;
  std::vector<std::int64_t> qs;
  if (cfg.q) {
    qs.push_back(*cfg.q);
  } else {
    for (std::int64_t q = 3; q < 50; q += 2)
      if (q != p && is_prime(q)) qs.push_back(q);
  }
  std::vector<std::function<Report()>> tasks;
  for (const auto& c : load_classes(p))
    for (std::int64_t q : qs)
      tasks.push_back([c, p, q] {
        const WittReport w = witt_identity_check(c.gram, p, q);
        Report r{"s_q(qS + A_(p-1)) = (-p/q)", "witt/identity", form_params(c), w.pass(), 0, {}, {}};
        r.parameters["p"] = p;
        r.parameters["q"] = q;
        r.parameters["legendre_minus_p_q"] = w.legendre_minus_p_q;
        r.parameters["s_q"] = w.s_q;
        r.parameters["s_infinity"] = w.s_infinity;
        r.parameters["s_2"] = w.s_2;
        r.parameters["s_p"] = w.s_p;
        r.parameters["product"] = w.product;
        return r;
      });
  tasks.push_back([p] {
    const auto q = witt_auxiliary_prime(p);
    Report r{"some q < 50 has (-p/q) = -1", "witt/auxiliary", Json{{"p", p}}, q.has_value(), 0, {}, {}};
    r.parameters["q"] = q ? Json(*q) : Json(nullptr);
    return r;
  });
  return tasks;
}

std::vector<std::function<Report()>> erratum_suite(const RunConfig& cfg) {
  const std::int64_t p = cfg.p, bound = require_bound(cfg);
  const int n = cfg.n;
  return {[p, n, bound] {
    const ErratumReport e = erratum_h_series(p, n, bound);
    Report r{"h = 1 mod p and nu_p(h|omega_i) >= -i^2/2 + 1", "erratum/h-series", Json::object(), e.pass(), bound,
             {}, {}};
    Json weights = Json::array(), cusps = Json::array();
    for (const auto& w : e.weights) weights.push_back(rational_to_string(w));
    for (const auto& c : e.cusps)
      cusps.push_back(Json{{"cusp", c.cusp},
                           {"constant_term", rational_to_string(c.constant_term)},
                           {"nu_p", c.nu.to_string()},
                           {"required", PadicValue::from_halves(c.required_halves).to_string()},
                           {"exponent_halves", c.exponent_halves},
                           {"pass", c.pass()}});
    r.parameters = Json{{"p", p},
                        {"n", n},
                        {"weights", weights},
                        {"h_congruent_to_one", e.h_congruent_to_one.pass},
                        {"cusps", cusps}};
    if (e.h_congruent_to_one.witness) r.witness = matrix_to_json(e.h_congruent_to_one.witness->matrix());
    return r;
  }};
}

std::vector<std::function<Report()>> dj_suite(const RunConfig& cfg) {
  const std::int64_t p = cfg.p;
  const int n = cfg.n;
  require_odd_prime(p, "dj");
  if (n < 1) throw InputError("--n must be positive");
  std::vector<std::function<Report()>> tasks;
  for (int j = 0; j <= n; ++j)
    tasks.push_back([n, j, p] {
      const Integer d = coset_index_d(n, j, p);
      const Rational product = coset_index_product(j, p);
      bool ok = d % p == 1;
      Report r{"d(j) = [GL(n,F_p) : P_(n,j)(F_p)] = 1 mod p", "coset/index", Json{{"n", n}, {"j", j}, {"p", p}}, false,
               0, {}, {}};
      r.parameters["index"] = d.get_str();
      r.parameters["product_j_plus_i"] = rational_to_string(product);
      r.parameters["product_matches_index"] = product == Rational(d);
      if (int_pow(p, static_cast<unsigned>(n * n)) <= 2000000) {
        const Integer brute = coset_index_brute_force(n, j, p);
        r.parameters["brute_force"] = brute.get_str();
        ok = ok && brute == d;
      }
      r.pass = ok;
      return r;
    });
  return tasks;
}

std::vector<std::function<Report()>> special_suite(const RunConfig& cfg) {
  const std::int64_t p = cfg.p, bound = require_bound(cfg);
  const int degree = cfg.degree;
  require_odd_prime(p, "special");
  std::vector<std::function<Report()>> tasks;
  auto check = [p, bound, degree](const SpecialLattice& l, Json params) {
    const DetLevel dl = det_level(l.gram);
    const QExpansion theta = theta_expansion(l.gram, degree, bound);
    const CongruenceVerdict v = congruence_check(theta, constant_expansion(degree, bound), p, bound);
    Report r{"theta^n(L) = 1 mod p for a p-special L", "special/theta", std::move(params), false, bound, {}, {}};
    r.parameters["p"] = p;
    r.parameters["degree"] = degree;
    r.parameters["det"] = dl.determinant.get_str();
    r.parameters["level"] = dl.level.get_str();
    r.parameters["certificate"] = l.certificate.verify(l.gram);
    r.pass = v.pass && l.certificate.verify(l.gram) && dl.level == p;
    if (v.witness) r.witness = matrix_to_json(v.witness->matrix());
    return r;
  };
  tasks.push_back([p, check] {
    const fs::path file = data_dir() / "roots" / ("a" + std::to_string(p - 1) + ".json");
    SpecialLattice l = a_root_lattice(p);
    if (fs::exists(file) && !(read_gram_file(file.string()) == l.gram))
      throw InputError(file.string() + " is not the A_(p-1) Gram matrix");
    return check(l, Json{{"lattice", "A_" + std::to_string(p - 1)}});
  });
  for (int t = 1; t <= p - 2; t += 2)
    tasks.push_back([p, t, check] {
      return check(p_special_lattice(p, t), Json{{"lattice", "ideal"}, {"t", t}});
    });
  return tasks;
}

int cmd_verify(const RunConfig& cfg) {
  std::vector<std::function<Report()>> tasks;
  if (cfg.suite == "kernel") tasks = kernel_suite(cfg);
  else if (cfg.suite == "dimensions") tasks = dimensions_suite(cfg);
  else if (cfg.suite == "km") tasks = km_suite(cfg);
  else if (cfg.suite == "witt") tasks = witt_suite(cfg);
  else if (cfg.suite == "erratum") tasks = erratum_suite(cfg);
  else if (cfg.suite == "dj") tasks = dj_suite(cfg);
  else if (cfg.suite == "special") tasks = special_suite(cfg);
  else throw InputError("unknown suite " + cfg.suite);

  const auto reports = run_tasks(tasks, cfg.threads, cfg.timing);
  const bool all = std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.pass; });
  std::ostringstream os;
  if (cfg.csv) {
    os << "claim,paper_ref,verdict,bound,parameters,witness";
    if (cfg.timing) os << ",elapsed_ms";
    os << '\n';
    for (const auto& r : reports) {
      os << csv_field(r.claim) << ',' << csv_field(r.ref) << ',' << (r.pass ? "pass" : "fail") << ',' << r.bound << ','
         << csv_field(r.parameters.dump()) << ',' << csv_field(r.witness ? r.witness->dump() : "");
      if (cfg.timing) os << ',' << r.elapsed_ms.value_or(0);
      os << '\n';
    }
  } else {
    Json list = Json::array();
    for (const auto& r : reports) list.push_back(report_to_json(r));
    os << Json{{"suite", cfg.suite}, {"verdict", all ? "pass" : "fail"}, {"reports", list}}.dump(2) << '\n';
  }
  emit(cfg, os.str());
  return all ? kExitOk : kExitFailed;
}

int cmd_theta(const RunConfig& cfg) {
  const GramMatrix s = read_gram_file(cfg.gram_path);
  const std::int64_t bound = require_bound(cfg);
  const Harmonic harmonic = cfg.det ? Harmonic::det : Harmonic::one;
  QExpansion f;
  if (cfg.cusp)
    f = slash_cusp(s, cfg.degree, *cfg.cusp, bound, harmonic);
  else
    f = cfg.det ? theta_det_expansion(s, cfg.degree, bound) : theta_expansion(s, cfg.degree, bound);
  if (cfg.det && f.is_zero() && automorphisms(s).has_improper())
    std::cerr << "warning: S has an automorphism of determinant -1, so theta_det vanishes identically\n";
  std::ostringstream os;
  if (cfg.csv) {
    os << "index_2T,value\n";
    for (const auto& [t, a] : f.coefficients) os << csv_field(matrix_to_json(t.matrix()).dump()) << ',' << a.get_str() << '\n';
  } else {
    os << expansion_to_json(f).dump(2) << '\n';
  }
  emit(cfg, os.str());
  return kExitOk;
}

int cmd_classgroup(const RunConfig& cfg) {
  const Json j = classgroup_to_json(cfg.disc);
  std::ostringstream os;
  if (cfg.csv) {
    os << "a,b,c,ambiguous,gl_partner\n";
    for (const auto& c : j["classes"])
      os << c["form"][0] << ',' << c["form"][1] << ',' << c["form"][2] << ',' << (c["ambiguous"].get<bool>() ? 1 : 0)
         << ',' << c["gl_partner"] << '\n';
  } else {
    os << j.dump(2) << '\n';
  }
  emit(cfg, os.str());
  return kExitOk;
}

int cmd_invariants(const RunConfig& cfg) {
  const GramMatrix s = read_gram_file(cfg.gram_path);
  const DetLevel dl = det_level(s);
  Json primes = Json::array(), places = Json::object();
  for (const auto& q : prime_divisors(dl.determinant)) {
    if (q == 2) continue;
    const std::int64_t p = q.get_si();
    primes.push_back(Json{{"p", p}, {"rank_mod_p", rank_mod_p(s, p)}, {"p_maximal", is_p_maximal(s, p)}});
  }
  for (const auto& v : relevant_places(s)) places[v.to_string()] = hasse_witt(s, v);
  const Json j{{"size", s.size()},
               {"det", dl.determinant.get_str()},
               {"level", dl.level.get_str()},
               {"primes", primes},
               {"hasse_witt", places}};
  std::ostringstream os;
  if (cfg.csv) {
    os << "key,value\n";
    for (const auto& [k, v] : j.items()) os << k << ',' << csv_field(v.dump()) << '\n';
  } else {
    os << j.dump(2) << '\n';
  }
  emit(cfg, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Exact theta series, theta operators and mod-p kernel verification"};
  app.require_subcommand(1);
  app.fallthrough();
  auto* json_flag = app.add_flag("--json", "JSON output (default)");
  app.add_flag("--csv", cfg.csv, "CSV output")->excludes(json_flag);
  app.add_option("--out", cfg.out_path, "Write output to a file");
  app.add_option("--threads", cfg.threads, "Worker threads for verify suites")->check(CLI::PositiveNumber);
  app.add_flag("--timing", cfg.timing, "Add elapsed_ms to reports");

  auto* theta = app.add_subcommand("theta", "Fourier expansion of a theta series");
  theta->add_option("--gram", cfg.gram_path, "Gram matrix JSON")->required();
  theta->add_option("--degree", cfg.degree, "Degree n")->check(CLI::PositiveNumber);
  theta->add_option("--bound", cfg.bound, "Trace bound B")->required();
  theta->add_flag("--det", cfg.det, "Weight by det X");
  theta->add_option("--cusp", cfg.cusp, "Expansion at the cusp omega_j");

  auto* classgroup = app.add_subcommand("classgroup", "Reduced binary forms of a negative discriminant");
  classgroup->add_option("--disc", cfg.disc, "Discriminant D < 0")->required()->allow_extra_args(false);

  auto* invariants = app.add_subcommand("invariants", "det, level, ranks mod p and Hasse-Witt invariants");
  invariants->add_option("--gram", cfg.gram_path, "Gram matrix JSON")->required();

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", cfg.suite, "kernel|dimensions|km|witt|erratum|dj|special")
      ->required()
      ->check(CLI::IsMember({"kernel", "dimensions", "km", "witt", "erratum", "dj", "special"}));
  verify->add_option("--p", cfg.p, "Odd prime p");
  verify->add_option("--q", cfg.q, "Auxiliary prime q (witt)");
  verify->add_option("--n", cfg.n, "Degree n (erratum, dj)");
  verify->add_option("--degree", cfg.degree, "Degree (special)")->check(CLI::PositiveNumber);
  verify->add_option("--bound", cfg.bound, "Trace bound B");
  verify->add_option("--dmax", cfg.d_max, "Largest d (km)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (theta->parsed()) return cmd_theta(cfg);
    if (classgroup->parsed()) return cmd_classgroup(cfg);
    if (invariants->parsed()) return cmd_invariants(cfg);
    return cmd_verify(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
