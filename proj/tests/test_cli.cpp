#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fullgroup/certificate.hpp"
#include "fullgroup/cli.hpp"

using namespace fullgroup;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST_CASE("certificate JSON round trip") {
  SystemPtr p = RotationSystem::standard(2);
  SynthesisCertificate c = synth_multi(p, 0, Rational(1, 20), Rational(1, 5));
  auto j = to_json(c);
  CHECK(j["format"] == kCertificateFormat);
  CHECK(j["system"]["circles"] == 2);
  SynthesisCertificate back = certificate_from_json(nlohmann::ordered_json::parse(j.dump()));
  CHECK(back.word == c.word);
  CHECK(back.target == c.target);
  CHECK(back.delta == c.delta);
  CHECK(back.achieved_distance == c.achieved_distance);
  CHECK(*back.system == *c.system);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(verify(back));
  CHECK(to_text(back) == to_text(c));

  auto tampered = j;
  tampered["achieved_distance"] = "1/1000";
  CHECK_FALSE(verify(certificate_from_json(tampered)));
  auto wrong = j;
  wrong["format"] = "something-else";
  CHECK_THROWS_AS(certificate_from_json(wrong), ParseError);
}

TEST_CASE("synth command") {
  Run ok = run({"synth", "--target", "[0,0.1)", "--delta", "0.2"});
  CHECK(ok.code == kExitOk);
  auto j = nlohmann::ordered_json::parse(ok.out);
  CHECK(j["target"] == "[0,1/10)");
  CHECK(j["delta"] == "1/5");

  Run overlap = run({"synth", "--target", "[0,0.9)"});
  CHECK(overlap.code == kExitPrecondition);

  Run small = run({"synth", "--target", "[0,0.4)", "--eps", "0.2"});
  CHECK(small.code == kExitPrecondition);
  CHECK(small.err.find("SmallnessError") != std::string::npos);

  Run multi = run({"synth", "--circles", "2", "--component", "1", "--target", "[0,0.1)", "--delta", "0.2"});
  CHECK(multi.code == kExitOk);
  auto m = nlohmann::ordered_json::parse(multi.out);
  CHECK(m["system"]["circles"] == 2);
  CHECK(m["target"] == "1:[0,1/10)");
  CHECK(verify(certificate_from_json(m)));

  Run close = run({"synth", "--target", "[0,0.05) [0.1,0.15)"});
  CHECK(close.code == kExitOk);

  Run not_found = run({"synth", "--target", "[0,0.1)", "--delta", "0.001", "--kmax", "4", "--kmax-cap", "8"});
  CHECK(not_found.code == kExitNotFound);

  Run bad = run({"synth", "--target", "[0,0.1"});
  CHECK(bad.code == kExitUsage);
  CHECK(run({"synth", "--delta", "0.2"}).code == kExitUsage);
  CHECK(run({"nonsense"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
}

TEST_CASE("output is reproducible") {
  std::vector<std::string> args{"synth", "--target", "[0.5,0.6)", "--delta", "0.1", "--format", "text"};
  CHECK(run(args).out == run(args).out);
  std::vector<std::string> table{"table", "--eps", "0.05", "--delta", "0.2,0.1", "--no-timing"};
  CHECK(run(table).out == run(table).out);
}

TEST_CASE("dist command") {
  Run u = run({"dist", "U", "id"});
  CHECK(u.code == kExitOk);
  CHECK(u.out == "2*sqrt(5) - 4\n0.472135954999\n");
  CHECK(run({"dist", "T", "T"}).out == "0\n0.000000000000\n");
  CHECK(run({"dist", "T", "T^2"}).out == "1\n1.000000000000\n");
  // T_{T(A)} = T T_A T^-1
  Run conj = run({"dist", "T U T^-1", "inv([sqrt(2) - 1, sqrt(2) + sqrt(5) - 3))"});
  CHECK(conj.out.rfind("0\n", 0) == 0);
  Run json = run({"dist", "U", "id", "--format", "json"});
  CHECK(nlohmann::json::parse(json.out)["distance"] == "2*sqrt(5) - 4");
  CHECK(run({"dist", "Q", "id"}).code == kExitUsage);
  CHECK(run({"dist", "U"}).code == kExitUsage);
}

TEST_CASE("verify command") {
  Run ok = run({"synth", "--target", "[0,0.1)", "--delta", "0.2"});
  auto path = temp_file("fullgroup_cert_ok.json", ok.out);
  Run v = run({"verify", path.string(), "--format", "json"});
  CHECK(v.code == kExitOk);
  auto report = nlohmann::json::parse(v.out);
  CHECK(report["verified"] == true);
  CHECK(report["recomputed_distance"] == report["recorded_distance"]);

  // Re-serializing the parsed certificate reproduces the original bytes.
  auto cert = certificate_from_json(nlohmann::ordered_json::parse(ok.out));
  CHECK(to_json(cert).dump(2) + "\n" == ok.out);

  auto j = nlohmann::ordered_json::parse(ok.out);
  j["word"] = "T U";
  auto bad_path = temp_file("fullgroup_cert_bad.json", j.dump());
  CHECK(run({"verify", bad_path.string()}).code == kExitVerifyFailed);

  Run sampled = run({"verify", path.string(), "--samples", "20000", "--seed", "7", "--format", "json"});
  auto s = nlohmann::json::parse(sampled.out);
  CHECK(s["seed"] == 7);
  CHECK(s["sampled_disagreement"].get<double>() < 0.1);

  auto garbage = temp_file("fullgroup_cert_garbage.json", "{not json");
  CHECK(run({"verify", garbage.string()}).code == kExitUsage);
  CHECK(run({"verify", "/nonexistent/cert.json"}).code == kExitUsage);
}

TEST_CASE("table command") {
  Run t = run({"table", "--eps", "0.05", "--delta", "0.2,0.1,0.05", "--no-timing"});
  CHECK(t.code == kExitOk);
  std::istringstream lines(t.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "eps,delta,word_tokens,word_letters,achieved_distance,achieved_decimal,wall_time_ms,status");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.ends_with(",0,ok"));
  }
  CHECK(rows == 3);

  Run empty = run({"table", "--eps", "0.05"});
  CHECK(empty.code == kExitUsage);

  Run capped = run({"table", "--eps", "0.05", "--delta", "0.001", "--kmax", "4", "--kmax-cap", "8"});
  CHECK(capped.code == kExitOk);
  CHECK(capped.out.find("NotFound") != std::string::npos);
}

TEST_CASE("dioph command") {
  Run cf = run({"dioph", "--alpha", "sqrt(2) - 1", "--cf", "5", "--format", "json"});
  CHECK(nlohmann::json::parse(cf.out)["continued_fraction"] == nlohmann::json({"2", "2", "2", "2", "2"}));
  Run best = run({"dioph", "--alpha", "sqrt(2) - 1", "--point", "0", "--tol", "2/25", "--kmax", "100"});
  CHECK(best.out.find("k: 5\n") != std::string::npos);
  CHECK(best.out.find("achieved: 5*sqrt(2) - 7\n") != std::string::npos);
  Run miss = run({"dioph", "--alpha", "sqrt(2) - 1", "--point", "0", "--tol", "1/1000000", "--kmax", "10"});
  CHECK(miss.code == kExitNotFound);
  Run gaps = run({"dioph", "--gaps", "10", "--format", "json"});
  CHECK(nlohmann::json::parse(gaps.out)["orbit_gaps"].size() == 11);
}

TEST_CASE("config file") {
  auto path = temp_file("fullgroup_config.ini", "target = \"[0,0.1)\"\ndelta = 0.2\nformat = csv\n");
  Run r = run({"synth", "--config", path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("target,delta", 0) == 0);
  CHECK(r.out.find("\"[0,1/10)\",1/5,") != std::string::npos);
}
