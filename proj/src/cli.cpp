#include "fullgroup/cli.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fullgroup/certificate.hpp"
#include "fullgroup/synthesis.hpp"

namespace fullgroup {

namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::size_t circles = 1;
  std::vector<std::string> alphas;
  std::string beta;
  std::size_t component = 0;
  std::string target;
  std::vector<std::string> deltas;
  std::vector<std::string> eps;
  std::int64_t k_max = std::int64_t{1} << 16;
  std::int64_t k_max_cap = std::int64_t{1} << 34;
  std::string format;
  std::uint64_t seed = 1;
  bool no_timing = false;

  // dist / verify / dioph
  std::vector<std::string> maps;
  std::string certificate_path;
  std::size_t samples = 0;
  std::vector<std::string> points;
  std::string tol = "1/100";
  std::size_t cf_depth = 0;
  std::size_t gaps = 0;
};

SystemPtr build_system(const RunConfig& c) {
  if (c.circles == 0) throw UsageError("--circles must be positive");
  std::vector<CircleNumber> alphas;
  if (c.alphas.empty()) {
    alphas = RotationSystem::standard_alphas(c.circles);
  } else {
    if (c.alphas.size() != c.circles) {
      throw UsageError("got " + std::to_string(c.alphas.size()) + " --alpha value(s) for " +
                       std::to_string(c.circles) + " circle(s)");
    }
    for (const auto& a : c.alphas) alphas.push_back(CircleNumber::parse(a));
  }
  CircleNumber beta = c.beta.empty() ? RotationSystem::standard_beta() : CircleNumber::parse(c.beta);
  return RotationSystem::create(std::move(alphas), std::move(beta));
}

SynthesisOptions build_options(const RunConfig& c) {
  if (c.k_max < 1 || c.k_max_cap < 1 || c.k_max_cap > kMaxSearchBound) {
    throw UsageError("--kmax and --kmax-cap must lie in [1, 2^52]");
  }
  SynthesisOptions o;
  o.k_max = c.k_max;
  o.k_max_cap = std::max(c.k_max, c.k_max_cap);
  return o;
}

Rational single_rational(const std::vector<std::string>& values, const std::string& flag) {
  if (values.size() != 1) throw UsageError(flag + " takes exactly one value here");
  return parse_rational(values.front());
}

// Without an explicit dimension prefix the target lives on --component.
ArcSet build_target(const RunConfig& c, const RotationSystem& system) {
  if (c.target.empty()) throw UsageError("--target is required");
  if (c.component >= system.circles()) throw UsageError("--component out of range");
  if (system.circles() == 1 || c.target.find(':') != std::string::npos) {
    return ArcSet::parse(c.target, system.circles());
  }
  ArcSet flat = ArcSet::parse(c.target, 1);
  std::vector<std::vector<Arc>> per_circle(system.circles());
  auto arcs = flat.arcs(0);
  per_circle[c.component].assign(arcs.begin(), arcs.end());
  return ArcSet::from_arcs(std::move(per_circle));
}

// Default block half-length: 1/20, halved until the block fits every circle the target touches.
Rational choose_eps(const RunConfig& c, const RotationSystem& system, const ArcSet& target) {
  if (!c.eps.empty()) return single_rational(c.eps, "--eps");
  Rational eps(1, 20);
  for (int attempt = 0; attempt < 12; ++attempt, eps /= 2) {
    bool fits = true;
    for (std::size_t i = 0; i < system.circles() && fits; ++i) {
      if (target.arcs(i).empty()) continue;
      try {
        check_smallness(system, i, CircleNumber(eps));
      } catch (const SmallnessError&) {
        fits = false;
      }
    }
    if (fits) return eps;
  }
  return Rational(1, 20);  // let synthesis report the SmallnessError
}

std::string format_of(const RunConfig& c, const char* fallback) { return c.format.empty() ? fallback : c.format; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void print_certificate(const SynthesisCertificate& cert, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << to_json(cert).dump(2) << "\n";
  } else if (format == "text") {
    out << to_text(cert);
  } else {
    out << "target,delta,word_tokens,word_letters,achieved_distance,achieved_decimal\n"
        << csv_field(cert.target.to_string()) << "," << cert.delta.get_str() << "," << cert.word.size() << ","
        << cert.word.letter_count() << "," << csv_field(cert.achieved_distance.to_string()) << ","
        << to_decimal(cert.achieved_distance, 12) << "\n";
  }
}

int cmd_synth(const RunConfig& c, std::ostream& out) {
  SystemPtr system = build_system(c);
  ArcSet target = build_target(c, *system);
  Rational delta = c.deltas.empty() ? Rational(1, 10) : single_rational(c.deltas, "--delta");
  Rational eps = choose_eps(c, *system, target);
  SynthesisCertificate cert = synth_set(system, target, delta, eps, build_options(c));
  print_certificate(cert, format_of(c, "json"), out);
  return kExitOk;
}

// A map is a product of T^m, U, id and inv(<arc set>) factors, applied right to left.
PiecewiseRotation parse_map(const std::string& spec, const SystemPtr& system) {
  PiecewiseRotation result = PiecewiseRotation::identity(system);
  std::size_t pos = 0;
  std::vector<PiecewiseRotation> factors;
  while (pos < spec.size()) {
    std::size_t inv = spec.find("inv(", pos);
    std::string word_part = spec.substr(pos, inv == std::string::npos ? std::string::npos : inv - pos);
    GeneratorWord w = GeneratorWord::parse(word_part);
    if (w.size() > 0) factors.push_back(evaluate(w, system));
    if (inv == std::string::npos) break;
    // Half-open arcs close with ')', so track '[' and '(' together.
    std::size_t open = inv + 3, depth = 0, close = open;
    for (; close < spec.size(); ++close) {
      char ch = spec[close];
      if (ch == '(' || ch == '[') ++depth;
      if ((ch == ')' || ch == ']') && --depth == 0) break;
    }
    if (close >= spec.size()) throw ParseError("unbalanced parentheses in map '" + spec + "'");
    factors.push_back(make_involution(system, ArcSet::parse(spec.substr(open + 1, close - open - 1), system->circles())));
    pos = close + 1;
  }
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) result = compose(*it, result);
  return result;
}

int cmd_dist(const RunConfig& c, std::ostream& out) {
  if (c.maps.size() != 2) throw UsageError("dist takes two map specs");
  SystemPtr system = build_system(c);
  CircleNumber d = uniform_distance(parse_map(c.maps[0], system), parse_map(c.maps[1], system));
  const std::string format = format_of(c, "text");
  if (format == "json") {
    out << ordered_json{{"distance", d.to_string()}, {"decimal", to_decimal(d, 12)}}.dump(2) << "\n";
  } else if (format == "csv") {
    out << "distance,decimal\n" << csv_field(d.to_string()) << "," << to_decimal(d, 12) << "\n";
  } else {
    out << d.to_string() << "\n" << to_decimal(d, 12) << "\n";
  }
  return kExitOk;
}

ordered_json read_json(const std::string& path) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    buffer << in.rdbuf();
  }
  try {
    return ordered_json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  SynthesisCertificate cert;
  try {
    cert = certificate_from_json(read_json(c.certificate_path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
  CircleNumber d = certify(cert.word, cert.target, cert.system);
  const bool matches = d == cert.achieved_distance;
  const bool below = d < CircleNumber(cert.delta);
  ordered_json report{{"verified", matches && below},
                      {"recomputed_distance", d.to_string()},
                      {"recorded_distance", cert.achieved_distance.to_string()},
                      {"below_delta", below}};
  if (c.samples > 0) {
    PiecewiseRotation w = evaluate(cert.word, cert.system);
    PiecewiseRotation t = make_involution(cert.system, cert.target);
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> circle(0, cert.system->circles() - 1);
    std::size_t differ = 0;
    for (std::size_t s = 0; s < c.samples; ++s) {
      std::size_t i = circle(rng);
      double x = unit(rng);
      if (w.apply_approx(i, x) != t.apply_approx(i, x)) ++differ;
    }
    report["seed"] = c.seed;
    report["samples"] = c.samples;
    report["sampled_disagreement"] = static_cast<double>(differ) / static_cast<double>(c.samples);
  }
  const std::string format = format_of(c, "text");
  if (format == "json") {
    out << report.dump(2) << "\n";
  } else {
    for (const auto& [key, value] : report.items()) {
      out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
  return matches && below ? kExitOk : kExitVerifyFailed;
}

struct TableRow {
  std::string status = "ok";
  std::string detail;
  std::uint64_t tokens = 0;
  std::uint64_t letters = 0;
  std::string achieved;
  std::string decimal;
  long long wall_ms = 0;
};

TableRow table_cell(const SystemPtr& system, std::size_t component, const Rational& eps, const Rational& delta,
                    const SynthesisOptions& options) {
  TableRow row;
  auto start = std::chrono::steady_clock::now();
  try {
    SynthesisCertificate cert = synth_multi(system, component, eps, delta, options);
    row.tokens = cert.word.size();
    row.letters = cert.word.letter_count();
    row.achieved = cert.achieved_distance.to_string();
    row.decimal = to_decimal(cert.achieved_distance, 12);
  } catch (const SmallnessError& e) {
    row.status = "SmallnessError";
    row.detail = e.what();
  } catch (const NotFound& e) {
    row.status = "NotFound";
    row.detail = e.what();
  } catch (const std::exception& e) {
    row.status = "error";
    row.detail = e.what();
  }
  row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return row;
}

int cmd_table(const RunConfig& c, std::ostream& out) {
  if (c.deltas.empty()) throw UsageError("table needs a nonempty --delta list");
  if (c.eps.empty()) throw UsageError("table needs a nonempty --eps list");
  SystemPtr system = build_system(c);
  if (c.component >= system->circles()) throw UsageError("--component out of range");
  SynthesisOptions options = build_options(c);
  std::vector<std::pair<Rational, Rational>> cells;
  for (const auto& e : c.eps) {
    for (const auto& d : c.deltas) cells.emplace_back(parse_rational(e), parse_rational(d));
  }
  std::vector<std::future<TableRow>> rows;
  for (const auto& [eps, delta] : cells) {
    rows.push_back(std::async(std::launch::async, table_cell, system, c.component, eps, delta, options));
  }
  const std::string format = format_of(c, "csv");
  ordered_json json_rows = ordered_json::array();
  if (format == "csv") out << "eps,delta,word_tokens,word_letters,achieved_distance,achieved_decimal,wall_time_ms,status\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    TableRow row = rows[r].get();
    long long wall = c.no_timing ? 0 : row.wall_ms;
    const std::string& eps = cells[r].first.get_str();
    const std::string& delta = cells[r].second.get_str();
    if (format == "csv") {
      out << eps << "," << delta << "," << row.tokens << "," << row.letters << "," << csv_field(row.achieved) << ","
          << row.decimal << "," << wall << "," << csv_field(row.detail.empty() ? row.status : row.status + ": " + row.detail)
          << "\n";
    } else {
      json_rows.push_back({{"eps", eps},
                           {"delta", delta},
                           {"word_tokens", row.tokens},
                           {"word_letters", row.letters},
                           {"achieved_distance", row.achieved},
                           {"achieved_decimal", row.decimal},
                           {"wall_time_ms", wall},
                           {"status", row.status},
                           {"detail", row.detail}});
    }
  }
  if (format != "csv") out << json_rows.dump(2) << "\n";
  return kExitOk;
}

int cmd_dioph(const RunConfig& c, std::ostream& out) {
  std::vector<CircleNumber> alphas;
  if (c.alphas.empty()) {
    alphas = RotationSystem::standard_alphas(c.circles);
  } else {
    for (const auto& a : c.alphas) alphas.push_back(CircleNumber::parse(a));
  }
  const std::string format = format_of(c, "text");
  ordered_json report;
  if (c.cf_depth > 0) {
    ordered_json terms = ordered_json::array();
    for (const auto& q : continued_fraction(alphas.front(), c.cf_depth)) terms.push_back(q.get_str());
    report["continued_fraction"] = terms;
  }
  if (c.gaps > 0) {
    ordered_json lengths = ordered_json::array();
    for (const auto& g : orbit_gaps(alphas.front(), c.gaps)) lengths.push_back(g.to_string());
    report["orbit_gaps"] = lengths;
  }
  if (c.cf_depth == 0 && c.gaps == 0) {
    std::vector<CircleNumber> targets;
    for (const auto& p : c.points) targets.push_back(CircleNumber::parse(p));
    if (targets.empty()) targets.assign(alphas.size(), CircleNumber());
    if (targets.size() != alphas.size()) throw UsageError("need one --point per alpha");
    Rational tol = parse_rational(c.tol);
    ApproxResult r = alphas.size() == 1 ? best_mod1_approx(alphas[0], targets[0], tol, c.k_max)
                                        : simultaneous_approx(alphas, targets, tol, c.k_max);
    report["k"] = r.k;
    report["achieved"] = r.achieved.to_string();
    report["achieved_decimal"] = to_decimal(r.achieved, 12);
    report["evaluations"] = r.evaluations;
  }
  if (format == "json") {
    out << report.dump(2) << "\n";
  } else {
    for (const auto& [key, value] : report.items()) {
      out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Word synthesis in the full group of irrational rotations", "fullgroup"};
  app.set_config("--config", "", "key = value configuration file");
  app.require_subcommand(1);
  app.add_option("--circles", c.circles, "number of circles n")->capture_default_str();
  app.add_option("--alpha", c.alphas, "rotation amount per circle (repeat n times)")->take_all();
  app.add_option("--beta", c.beta, "base set length");
  app.add_option("--component", c.component, "circle carrying an unprefixed target")->capture_default_str();
  app.add_option("--target", c.target, "target arc set, e.g. \"[0,0.1)\" or \"1:[0,1/10)\"");
  app.add_option("--delta", c.deltas, "tolerance (table: comma-separated list)")->delimiter(',');
  app.add_option("--eps", c.eps, "block half-length (table: comma-separated list)")->delimiter(',');
  app.add_option("--kmax", c.k_max, "initial Diophantine search bound")->capture_default_str();
  app.add_option("--kmax-cap", c.k_max_cap, "largest search bound after doubling")->capture_default_str();
  app.add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", c.seed, "seed for sampled checks")->capture_default_str();
  app.add_flag("--no-timing", c.no_timing, "report wall_time as 0 in tables");
  app.add_option("--samples", c.samples, "verify: Monte Carlo sample count");
  app.add_option("--point", c.points, "dioph: target point per alpha")->take_all();
  app.add_option("--tol", c.tol, "dioph: tolerance")->capture_default_str();
  app.add_option("--cf", c.cf_depth, "dioph: continued fraction depth");
  app.add_option("--gaps", c.gaps, "dioph: three-distance orbit length");

  auto* synth = app.add_subcommand("synth", "synthesize a certified word for --target");
  auto* dist = app.add_subcommand("dist", "exact uniform distance between two maps");
  dist->add_option("maps", c.maps, "two map specs such as \"U\" and \"T^2 inv([0,0.1))\"")->expected(2)->required();
  auto* verify_cmd = app.add_subcommand("verify", "re-verify a JSON certificate");
  verify_cmd->add_option("certificate", c.certificate_path, "certificate file, - for stdin")->required();
  auto* table = app.add_subcommand("table", "convergence table over --eps x --delta");
  auto* dioph = app.add_subcommand("dioph", "Diophantine queries");
  for (auto* sub : {synth, dist, verify_cmd, table, dioph}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(c, out);
    if (*dist) return cmd_dist(c, out);
    if (*verify_cmd) return cmd_verify(c, out);
    if (*table) return cmd_table(c, out);
    return cmd_dioph(c, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SmallnessError& e) {
    err << "SmallnessError: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const OverlapError& e) {
    err << "OverlapError: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const IndependenceError& e) {
    err << "IndependenceError: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const NotFound& e) {
    err << "NotFound: " << e.what() << "\n";
    return kExitNotFound;
  } catch (const SeparationError& e) {
    err << "SeparationError: " << e.what() << "\n";
    return kExitSeparation;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitPrecondition;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"fullgroup"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace fullgroup
