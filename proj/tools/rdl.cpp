#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdl/acceptance.hpp"
#include "rdl/buchstab.hpp"
#include "rdl/digitset.hpp"
#include "rdl/errors.hpp"
#include "rdl/fourier.hpp"
#include "rdl/markov.hpp"
#include "rdl/primes_lab.hpp"

using json = nlohmann::json;
using u64 = std::uint64_t;

namespace {

struct GlobalOpts {
  std::string ds_text = "q10-x7";
  u64 seed = 1;
  std::string format;  // empty = subcommand default
  int threads = 0;     // 0 = all available cores
  bool reproducible = false;

  int resolved_threads() const {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }

  std::string resolved_format(const std::string& sub_default) const {
    return format.empty() ? sub_default : format;
  }

  json config(const std::string& op) const {
    json cfg;
    cfg["schema"] = "rdl/1";
    cfg["op"] = op;
    cfg["digit_system"] = ds_text;
    cfg["seed"] = seed;
    cfg["threads"] = resolved_threads();
    cfg["reproducible"] = reproducible;
    if (!reproducible) {
      std::time_t now = std::time(nullptr);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      cfg["timestamp"] = buf;
    }
    return cfg;
  }
};

void csv_rows(std::ostream& os, const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      csv_rows(os, value, prefix.empty() ? key : prefix + "." + key);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& value : j) csv_rows(os, value, prefix + "." + std::to_string(i++));
  } else {
    os << prefix << "," << j.dump() << "\n";
  }
}

void text_rows(std::ostream& os, const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      text_rows(os, value, prefix.empty() ? key : prefix + "." + key);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& value : j) text_rows(os, value, prefix + "." + std::to_string(i++));
  } else {
    os << prefix << ": " << j.dump() << "\n";
  }
}

void emit_config_comments(std::ostream& os, const json& cfg) {
  for (const auto& [key, value] : cfg.items())
    os << "# " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump())
       << "\n";
}

// Single-document subcommands: json is one object embedding the config.
void emit_doc(const GlobalOpts& g, const std::string& op, const json& payload,
              const std::string& fmt) {
  json cfg = g.config(op);
  if (fmt == "json") {
    json doc = cfg;
    doc["report"] = payload;
    std::cout << doc.dump() << "\n";
  } else if (fmt == "csv") {
    emit_config_comments(std::cout, cfg);
    csv_rows(std::cout, payload, "");
  } else {
    emit_config_comments(std::cout, cfg);
    text_rows(std::cout, payload, "");
  }
}

double parse_t(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return std::stod(text);
  return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
}

u64 parse_amount(double x, const char* what) {
  if (x < 0 || x > 1.8e19) throw rdl::ConfigError(std::string(what) + " out of range");
  return static_cast<u64>(x);
}

std::string fixtures_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("RDL_FIXTURES")) return env;
  return "fixtures/golden.json";
}

json moment_json(const rdl::MomentReport& rep, const char* op, double t_value, u64 cap) {
  json rec;
  rec["record"] = op;
  rec["op"] = op;
  rec["digit_system"] = rep.digit_system;
  rec["k"] = rep.k;
  rec["params"] = {{"t", t_value}, {"cap", cap}};
  rec["value"] = rep.sum;
  rec["sum"] = rep.sum;
  rec["prev_sum"] = rep.prev_sum;
  rec["log_ratio"] = rep.log_ratio;
  rec["empirical_exponent"] = rep.empirical_exponent;
  rec["samples"] = rep.samples;
  rec["definition"] =
      "sum over a < q^k of the normalized transform at a/q^k raised to t; empirical_exponent is "
      "the least-squares slope of ln(sum) against ln(q^j) over the last three scales";
  return rec;
}

void emit_per_frequency_csv(const rdl::DigitSystem& ds, int k, double t) {
  u64 total = 1;
  for (int i = 0; i < k; ++i) {
    total *= static_cast<u64>(ds.base());
    if (total > 10000000ULL) throw rdl::ResourceError("per-frequency CSV limited to q^k <= 1e7");
  }
  std::cout << "a,value\n";
  for (u64 a = 0; a < total; ++a) {
    double v = rdl::transform_product(ds, k, rdl::Angle(a, total, 0.0));
    std::cout << a << "," << (t == 1.0 ? v : std::pow(v, t)) << "\n";
  }
}

int run_moment_like(const GlobalOpts& g, const char* op, int k, const std::string& t_text,
                    double cap) {
  rdl::DigitSystem ds = rdl::DigitSystem::parse(g.ds_text);
  double t = parse_t(t_text);
  u64 cap_u = parse_amount(cap, "cap");
  rdl::MomentReport rep = t == 1.0 ? rdl::l1_scan(ds, k, g.resolved_threads(), cap_u)
                                   : rdl::moment_scan(ds, k, t, g.resolved_threads(), cap_u);
  std::string fmt = g.resolved_format("json");
  if (fmt == "json") {
    std::cout << g.config(op).dump() << "\n";
    for (std::size_t i = 0; i < rep.scale_sums.size(); ++i) {
      json row = {{"record", "scale"},
                  {"op", op},
                  {"j", rep.scale_lo + static_cast<int>(i)},
                  {"sum", rep.scale_sums[i]}};
      std::cout << row.dump() << "\n";
    }
    std::cout << moment_json(rep, op, t, cap_u).dump() << "\n";
  } else if (fmt == "csv") {
    emit_config_comments(std::cout, g.config(op));
    std::cout << "# sum=" << rep.sum << " empirical_exponent=" << rep.empirical_exponent << "\n";
    emit_per_frequency_csv(ds, k, t);
  } else {
    emit_config_comments(std::cout, g.config(op));
    text_rows(std::cout, moment_json(rep, op, t, cap_u), "");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for restricted-digit sets: transforms, eigenvalue "
               "certificates, sieve integrals, and prime counts"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--ds", g.ds_text, "digit system, e.g. q10-x7 (base 10, exclude digit 7)");
  app.add_option("--seed", g.seed, "master seed for randomized scans");
  app.add_option("--format", g.format, "output format: json, csv, or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", g.threads, "worker thread cap (0 = all cores)");
  app.add_flag("--reproducible", g.reproducible, "suppress the timestamp field");

  auto* sub_eigen = app.add_subcommand("eigen", "dominant eigenvalue of the windowed-supremum matrix");
  int eig_j = 4;
  std::string eig_t = "1";
  std::string eig_a0 = "all";
  double eig_tol = 1e-10;
  bool eig_check = false;
  sub_eigen->add_option("--j", eig_j, "digit-window length J (states = 10^J)");
  sub_eigen->add_option("--t", eig_t, "entry exponent t, e.g. 1 or 235/154");
  sub_eigen->add_option("--a0", eig_a0, "excluded digit 0..9, or 'all'");
  sub_eigen->add_option("--tol", eig_tol, "power-iteration residual tolerance");
  sub_eigen->add_flag("--check", eig_check, "exit 2 unless every certified bound beats the target");

  auto* sub_moments = app.add_subcommand("moments", "t-th moment sum of the transform over a scale grid");
  int mom_k = 6;
  std::string mom_t = "235/154";
  double mom_cap = 1e8;
  sub_moments->add_option("--k", mom_k, "number of digit positions");
  sub_moments->add_option("--t", mom_t, "moment exponent, e.g. 235/154");
  sub_moments->add_option("--cap", mom_cap, "frequency-evaluation budget");

  auto* sub_l1 = app.add_subcommand("l1", "l1 sum of the transform over a scale grid");
  int l1_k = 6;
  double l1_cap = 1e8;
  sub_l1->add_option("--k", l1_k, "number of digit positions");
  sub_l1->add_option("--cap", l1_cap, "frequency-evaluation budget");

  auto* sub_fourier = app.add_subcommand("fourier", "evaluate the normalized transform at one frequency");
  int fr_k = 6;
  u64 fr_a = 1;
  double fr_eta = 0.0;
  bool fr_direct = false;
  sub_fourier->add_option("--k", fr_k, "number of digit positions");
  sub_fourier->add_option("--a", fr_a, "numerator of the frequency a/q^k");
  sub_fourier->add_option("--eta", fr_eta, "real offset added to a/q^k");
  sub_fourier->add_flag("--direct", fr_direct, "also evaluate by direct summation over members");

  auto* sub_exc = app.add_subcommand("exceptional", "frequencies where the transform stays large");
  int exc_k = 6;
  double exc_threshold = 23.0 / 80.0;
  double exc_member_cap = 1000;
  sub_exc->add_option("--k", exc_k, "number of digit positions");
  sub_exc->add_option("--threshold", exc_threshold, "decay exponent defining 'large'");
  sub_exc->add_option("--member-cap", exc_member_cap, "max recorded exceptional numerators");

  auto* sub_ls = app.add_subcommand("largesieve", "sum of transform suprema over rational frequencies");
  int ls_k = 6;
  double ls_q = 100;
  double ls_beta = 0.0;
  int ls_eta_samples = 33;
  sub_ls->add_option("--Q,--bigq", ls_q, "modulus bound Q (needs Q^2 <= 1e6)");
  sub_ls->add_option("--k", ls_k, "number of digit positions");
  sub_ls->add_option("--beta", ls_beta, "frequency-center offset beta");
  sub_ls->add_option("--eta-samples", ls_eta_samples, "perturbation samples per residue");

  auto* sub_omega = app.add_subcommand("omega", "sieve weight function value");
  double om_u = 2.5;
  double om_umax = 20.0;
  double om_h = 1e-4;
  // --h as a data flag needs the short help alias freed on this subcommand
  sub_omega->set_help_flag("--help", "print help");
  sub_omega->add_option("--u", om_u, "argument u in [1, u_max]")->required();
  sub_omega->add_option("--umax", om_umax, "table extent");
  sub_omega->add_option("--h", om_h, "marching step");

  auto* sub_int = app.add_subcommand("integrals", "seven-region sieve-loss integral table");
  std::string int_theta;
  double int_budget = 2e7;
  bool int_check = false;
  sub_int->add_option("--theta", int_theta, "theta1,theta2,theta3 (default 0.36,0.425,50/77)");
  sub_int->add_option("--budget", int_budget, "quasi-MC points per integral");
  sub_int->add_flag("--check", int_check, "exit 2 unless total + 3 sigma < 0.99");

  auto* sub_primes = app.add_subcommand("primes", "prime counts among members against the density model");
  double pr_x = 1e7;
  sub_primes->add_option("--x", pr_x, "count members and primes below x");

  auto* sub_typei = app.add_subcommand("typei", "divisibility discrepancy of members over small moduli");
  double ti_x = 1e6;
  double ti_q = 1000;
  sub_typei->add_option("--x", ti_x, "member limit");
  sub_typei->add_option("--q", ti_q, "modulus bound Q");

  auto* sub_exp = app.add_subcommand("expsum", "absolute exponential sum over primes");
  double ex_x = 1e6;
  u64 ex_num = 0;
  u64 ex_den = 1;
  double ex_eta = 0.0;
  sub_exp->add_option("--x", ex_x, "prime limit");
  sub_exp->add_option("--num", ex_num, "rational phase numerator");
  sub_exp->add_option("--den", ex_den, "rational phase denominator");
  sub_exp->add_option("--eta", ex_eta, "real phase offset");

  auto* sub_baseq = app.add_subcommand("baseq", "l1 growth factor for general base and excluded count");
  u64 bq_q = 0;
  u64 bq_s = 0;
  bool bq_interval = false;
  sub_baseq->add_option("--q", bq_q, "base")->required();
  sub_baseq->add_option("--s", bq_s, "number of excluded digits")->required();
  sub_baseq->add_flag("--interval", bq_interval, "use the interval-regime factor");

  auto* sub_verify = app.add_subcommand("verify-all", "run the full verification suite");
  double va_budget = 2e7;
  std::string va_fixtures;
  sub_verify->add_option("--budget", va_budget, "quasi-MC points per integral");
  sub_verify->add_option("--fixtures", va_fixtures, "golden-fixtures path (default $RDL_FIXTURES)");

  // global flags (--format, --seed, ...) may follow the subcommand name
  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*sub_eigen) {
      double t = parse_t(eig_t);
      std::vector<int> a0s;
      if (eig_a0 == "all") {
        for (int a0 = 0; a0 <= 9; ++a0) a0s.push_back(a0);
      } else {
        int a0 = std::stoi(eig_a0);
        if (a0 < 0 || a0 > 9) throw rdl::ConfigError("--a0 must be 0..9 or 'all'");
        a0s.push_back(a0);
      }
      double bound = 0.0;
      if (eig_j == 4 && std::fabs(t - 1.0) < 1e-15) bound = 2.24190;
      if (eig_j == 4 && std::fabs(t - 235.0 / 154.0) < 1e-12) bound = 1.36854;
      if (eig_check && bound == 0.0)
        throw rdl::ConfigError("--check requires --j 4 with --t 1 or --t 235/154");

      std::string fmt = g.resolved_format("json");
      json cfg = g.config("eigen");
      if (fmt == "json")
        std::cout << cfg.dump() << "\n";
      else
        emit_config_comments(std::cout, cfg);
      if (fmt == "csv") std::cout << "a0,j,t,lambda,cw_upper,cw_lower,residual,iterations\n";

      double max_lambda = 0.0, max_upper = 0.0, max_resid = 0.0;
      for (int a0 : a0s) {
        rdl::EigenReport rep = rdl::dominant_eigenvalue(rdl::build_matrix(a0, eig_j, t), eig_tol);
        max_lambda = std::max(max_lambda, rep.lambda);
        max_upper = std::max(max_upper, rep.cw_upper);
        max_resid = std::max(max_resid, rep.residual);
        if (fmt == "json") {
          json rec;
          rec["record"] = "eigen";
          rec["a0"] = rep.a0;
          rec["j"] = rep.J;
          rec["t"] = rep.t;
          rec["lambda"] = rep.lambda;
          rec["cw_upper"] = rep.cw_upper;
          rec["cw_lower"] = rep.cw_lower;
          rec["residual"] = rep.residual;
          rec["iterations"] = rep.iterations;
          rec["definition"] =
              "dominant eigenvalue of the 10^J x 10^J matrix of windowed per-digit suprema "
              "raised to t; cw bounds are certified Collatz-Wielandt enclosures";
          std::cout << rec.dump() << "\n";
        } else if (fmt == "csv") {
          std::printf("%d,%d,%.17g,%.12f,%.12f,%.12f,%.3e,%d\n", rep.a0, rep.J, rep.t, rep.lambda,
                      rep.cw_upper, rep.cw_lower, rep.residual, rep.iterations);
        } else {
          std::printf("a0=%d lambda=%.9f upper=%.9f lower=%.9f residual=%.2e iterations=%d\n",
                      rep.a0, rep.lambda, rep.cw_upper, rep.cw_lower, rep.residual,
                      rep.iterations);
        }
      }
      bool pass = bound > 0.0 && max_upper < bound;
      json summary;
      summary["record"] = "summary";
      summary["max_lambda"] = max_lambda;
      summary["max_cw_upper"] = max_upper;
      summary["max_residual"] = max_resid;
      if (bound > 0.0) {
        summary["reference_bound"] = bound;
        summary["pass"] = pass;
      }
      if (fmt == "json")
        std::cout << summary.dump() << "\n";
      else if (fmt == "csv")
        std::cout << "# max_lambda=" << max_lambda << " max_cw_upper=" << max_upper
                  << (bound > 0.0 ? " bound=" + std::to_string(bound) : "")
                  << " pass=" << (pass ? "1" : "0") << "\n";
      else
        std::cout << "max_lambda=" << max_lambda << " max_cw_upper=" << max_upper
                  << (bound > 0.0 ? " bound=" + std::to_string(bound) : "")
                  << " pass=" << (pass ? "yes" : "no") << "\n";
      return (eig_check && !pass) ? 2 : 0;
    }

    if (*sub_moments) return run_moment_like(g, "moments", mom_k, mom_t, mom_cap);
    if (*sub_l1) return run_moment_like(g, "l1", l1_k, "1", l1_cap);

    if (*sub_fourier) {
      rdl::DigitSystem ds = rdl::DigitSystem::parse(g.ds_text);
      rdl::Angle theta = rdl::Angle::at_scale(ds.base(), fr_k, fr_a, fr_eta);
      json payload;
      payload["k"] = fr_k;
      payload["a"] = fr_a;
      payload["eta"] = fr_eta;
      payload["theta"] = theta.value();
      payload["value"] = rdl::transform_product(ds, fr_k, theta);
      if (fr_direct) {
        payload["value_direct"] = rdl::transform_direct(ds, fr_k, theta);
        payload["abs_diff"] =
            std::fabs(payload["value"].get<double>() - payload["value_direct"].get<double>());
      }
      payload["definition"] =
          "normalized absolute digit-string exponential sum at frequency a/q^k + eta, computed "
          "by the per-digit product";
      emit_doc(g, "fourier", payload, g.resolved_format("json"));
      return 0;
    }

    if (*sub_exc) {
      rdl::DigitSystem ds = rdl::DigitSystem::parse(g.ds_text);
      rdl::ExceptionalReport rep = rdl::exceptional_set(
          ds, exc_k, exc_threshold, parse_amount(exc_member_cap, "member cap"));
      std::string fmt = g.resolved_format("json");
      json rec;
      rec["record"] = "exceptional";
      rec["op"] = "exceptional";
      rec["digit_system"] = rep.digit_system;
      rec["k"] = rep.k;
      rec["params"] = {{"threshold_exponent", rep.threshold_exponent}};
      rec["value"] = rep.size;
      rec["empirical_exponent"] = rep.empirical_exponent;
      rec["samples"] = rep.samples;
      rec["members_preview"] = rep.members;
      rec["definition"] =
          "count of frequencies a/q^k where the transform is at least (q^k)^(-threshold); "
          "empirical_exponent = log(count)/log(q^k)";
      if (fmt == "json") {
        std::cout << g.config("exceptional").dump() << "\n";
        u64 den = 1;
        for (int i = 0; i < rep.k; ++i) den *= static_cast<u64>(ds.base());
        for (u64 a : rep.members) {
          json row = {{"record", "member"},
                      {"op", "exceptional"},
                      {"a", a},
                      {"value", rdl::transform_product(ds, rep.k, rdl::Angle(a, den, 0.0))}};
          std::cout << row.dump() << "\n";
        }
        std::cout << rec.dump() << "\n";
      } else if (fmt == "csv") {
        emit_config_comments(std::cout, g.config("exceptional"));
        std::cout << "# size=" << rep.size << " empirical_exponent=" << rep.empirical_exponent
                  << "\n";
        std::cout << "a,value\n";
        u64 den = 1;
        for (int i = 0; i < rep.k; ++i) den *= static_cast<u64>(ds.base());
        for (u64 a : rep.members)
          std::cout << a << "," << rdl::transform_product(ds, rep.k, rdl::Angle(a, den, 0.0))
                    << "\n";
      } else {
        emit_config_comments(std::cout, g.config("exceptional"));
        rec.erase("members_preview");
        text_rows(std::cout, rec, "");
      }
      return 0;
    }

    if (*sub_ls) {
      rdl::DigitSystem ds = rdl::DigitSystem::parse(g.ds_text);
      std::string fmt = g.resolved_format("json");
      std::vector<std::array<double, 3>> pairs;
      rdl::LargeSieveReport rep =
          rdl::large_sieve_sum(ds, ls_k, parse_amount(ls_q, "Q"), ls_beta, ls_eta_samples,
                               fmt == "text" ? nullptr : &pairs);
      json rec;
      rec["record"] = "largesieve";
      rec["op"] = "largesieve";
      rec["digit_system"] = rep.digit_system;
      rec["k"] = rep.k;
      rec["params"] = {{"Q", rep.Q}, {"beta", rep.beta}, {"eta_samples", rep.eta_samples}};
      rec["value"] = rep.value;
      rec["terms"] = rep.terms;
      rec["q_exponent"] = rep.q_exponent;
      rec["samples"] = rep.terms * static_cast<u64>(rep.eta_samples);
      rec["definition"] =
          "sum over moduli q <= Q and residues a coprime to q of the supremum of the transform "
          "over a small window around a/q + beta; q_exponent = log(value)/log(Q)";
      if (fmt == "json") {
        std::cout << g.config("largesieve").dump() << "\n";
        for (const auto& p : pairs) {
          json row = {{"record", "pair"},
                      {"op", "largesieve"},
                      {"q", static_cast<u64>(p[0])},
                      {"a", static_cast<u64>(p[1])},
                      {"sup", p[2]}};
          std::cout << row.dump() << "\n";
        }
        std::cout << rec.dump() << "\n";
      } else if (fmt == "csv") {
        emit_config_comments(std::cout, g.config("largesieve"));
        std::cout << "# value=" << rep.value << " terms=" << rep.terms << "\n";
        std::cout << "q,a,sup\n";
        for (const auto& p : pairs)
          std::printf("%.0f,%.0f,%.12g\n", p[0], p[1], p[2]);
      } else {
        emit_config_comments(std::cout, g.config("largesieve"));
        text_rows(std::cout, rec, "");
      }
      return 0;
    }

    if (*sub_omega) {
      rdl::OmegaTable omega(om_umax, om_h);
      double value = omega(om_u);
      std::string fmt = g.resolved_format("text");
      if (fmt == "text") {
        std::printf("%.10f\n", value);
      } else if (fmt == "csv") {
        emit_config_comments(std::cout, g.config("omega"));
        std::printf("u,omega\n%.12g,%.12g\n", om_u, value);
      } else {
        json payload;
        payload["u"] = om_u;
        payload["omega"] = value;
        payload["u_max"] = om_umax;
        payload["h"] = om_h;
        payload["definition"] =
            "continuous solution of w(u) = 1/u on [1,2] with (u w(u))' = w(u-1) beyond";
        emit_doc(g, "omega", payload, "json");
      }
      return 0;
    }

    if (*sub_int) {
      std::array<double, 3> theta{0.36, 0.425, 50.0 / 77.0};
      if (!int_theta.empty()) {
        if (std::sscanf(int_theta.c_str(), "%lf,%lf,%lf", &theta[0], &theta[1], &theta[2]) != 3)
          throw rdl::ConfigError("--theta expects three comma-separated values");
      }
      rdl::OmegaTable omega;
      rdl::IntegralReport rep = rdl::verify_margin(theta, parse_amount(int_budget, "budget"),
                                                   g.seed, omega, g.resolved_threads());
      json payload;
      payload["theta"] = rep.theta;
      payload["budget"] = rep.budget;
      payload["regions"] = {"I1", "I2", "I3", "I4", "I5", "I6", "I7"};
      payload["values"] = rep.values;
      payload["error_estimates"] = rep.error_estimates;
      payload["adaptive_regions"] = {"I1", "I2", "I5", "I6"};
      payload["adaptive_values"] = rep.adaptive_values;
      payload["adaptive_errors"] = rep.adaptive_errors;
      payload["adaptive_agree"] = rep.adaptive_agree;
      payload["total"] = rep.total;
      payload["margin"] = rep.margin;
      payload["pass"] = rep.pass;
      payload["samples"] = rep.samples;
      payload["definition"] =
          "seven sieve-loss integrals by 16-replicate digitally shifted quasi-MC; 2D regions "
          "cross-checked by adaptive iterated quadrature; pass requires total + 3 sigma < 0.99";
      emit_doc(g, "integrals", payload, g.resolved_format("json"));
      return (int_check && !rep.pass) ? 2 : 0;
    }

    if (*sub_primes) {
      rdl::DigitSystem ds = rdl::DigitSystem::parse(g.ds_text);
      rdl::PrimeRatioReport rep = rdl::prime_ratio_report(ds, parse_amount(pr_x, "x"));
      json payload;
      payload["digit_system"] = rep.digit_system;
      payload["x"] = rep.limit;
      payload["prime_count_in_set"] = rep.primes_in_set;
      payload["member_count"] = rep.members;
      payload["kappa2"] = rep.kappa2;
      payload["ratio"] = rep.ratio;
      payload["definition"] =
          "ratio of the observed prime count among members below x to the density-model "
          "prediction kappa2 * members / ln x";
      emit_doc(g, "primes", payload, g.resolved_format("json"));
      return 0;
    }

    if (*sub_typei) {
      rdl::DigitSystem ds = rdl::DigitSystem::parse(g.ds_text);
      rdl::TypeIDiscrepancy rep =
          rdl::type_i_discrepancy(ds, parse_amount(ti_x, "x"), parse_amount(ti_q, "Q"));
      std::string fmt = g.resolved_format("json");
      json payload;
      payload["digit_system"] = ds.str();
      payload["x"] = rep.limit;
      payload["Q"] = rep.q_max;
      payload["member_count"] = rep.members;
      payload["kappa"] = rep.kappa.str();
      payload["total"] = rep.total;
      payload["normalized"] = rep.normalized;
      payload["definition"] =
          "sum over moduli q < Q coprime to 10 of |#(members divisible by q and coprime to 10) "
          "- kappa * members / q|; normalized divides by the member count";
      if (fmt == "csv") {
        emit_config_comments(std::cout, g.config("typei"));
        std::cout << "# total=" << rep.total << " normalized=" << rep.normalized << "\n";
        std::cout << "q,term\n";
        for (std::size_t i = 0; i < rep.moduli.size(); ++i)
          std::cout << rep.moduli[i] << "," << rep.terms[i] << "\n";
      } else {
        emit_doc(g, "typei", payload, fmt);
      }
      return 0;
    }

    if (*sub_exp) {
      rdl::Angle theta(ex_num, ex_den, ex_eta);
      double value = rdl::prime_exp_sum(parse_amount(ex_x, "x"), theta);
      json payload;
      payload["x"] = parse_amount(ex_x, "x");
      payload["num"] = ex_num;
      payload["den"] = ex_den;
      payload["eta"] = ex_eta;
      payload["value"] = value;
      payload["definition"] = "absolute value of the exponential sum over primes p < x of e(p theta)";
      emit_doc(g, "expsum", payload, g.resolved_format("json"));
      return 0;
    }

    if (*sub_baseq) {
      rdl::BaseQFactor f = rdl::base_q_l1_factor(bq_q, bq_s, bq_interval);
      json payload;
      payload["q"] = f.q;
      payload["s"] = f.s;
      payload["interval_mode"] = f.interval_mode;
      payload["factor"] = f.factor;
      payload["threshold_ok"] = f.threshold_ok;
      payload["regime_ok"] = f.regime_ok;
      payload["definition"] =
          "per-digit l1 growth factor (q ln q + q s)/(q - s), or (q ln q + q - s)/(q - s) in "
          "interval mode; regime_ok checks s against the applicable power-of-q threshold";
      emit_doc(g, "baseq", payload, g.resolved_format("json"));
      return 0;
    }

    if (*sub_verify) {
      rdl::AcceptanceConfig cfg;
      cfg.budget = parse_amount(va_budget, "budget");
      cfg.seed = g.seed;
      cfg.threads = g.resolved_threads();
      cfg.fixtures_path = fixtures_path(va_fixtures);
      std::string fmt = g.resolved_format("text");
      json header = g.config("verify-all");
      header["budget"] = cfg.budget;
      header["fixtures"] = cfg.fixtures_path;
      std::vector<rdl::CriterionResult> results = rdl::run_criteria(cfg);
      bool pass = rdl::all_pass(results);
      if (fmt == "json") {
        std::cout << header.dump() << "\n";
        for (const rdl::CriterionResult& r : results) {
          json rec;
          rec["record"] = "criterion";
          rec["id"] = r.id;
          rec["name"] = r.name;
          rec["pass"] = r.pass;
          rec["detail"] = r.detail;
          std::cout << rec.dump() << "\n";
        }
        json summary;
        summary["record"] = "summary";
        summary["pass"] = pass;
        std::cout << summary.dump() << "\n";
      } else {
        emit_config_comments(std::cout, header);
        std::cout << rdl::format_table(results);
        std::cout << "RESULT: " << (pass ? "PASS" : "FAIL") << "\n";
      }
      return pass ? 0 : 2;
    }
  } catch (const rdl::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const rdl::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
