#include "fullgroup/certificate.hpp"

namespace fullgroup {

using nlohmann::ordered_json;

ordered_json system_to_json(const RotationSystem& system) {
  ordered_json alphas = ordered_json::array();
  for (const auto& a : system.alphas()) alphas.push_back(a.to_string());
  return ordered_json{{"circles", system.circles()}, {"alphas", alphas}, {"beta", system.beta().to_string()}};
}

SystemPtr system_from_json(const ordered_json& j) {
  std::vector<CircleNumber> alphas;
  for (const auto& a : j.at("alphas")) alphas.push_back(CircleNumber::parse(a.get<std::string>()));
  if (j.contains("circles") && j.at("circles").get<std::size_t>() != alphas.size()) {
    throw ParseError("certificate system: circle count does not match alphas");
  }
  CircleNumber beta = CircleNumber::parse(j.at("beta").get<std::string>());
  try {
    return RotationSystem::create(alphas, beta);
  } catch (const std::invalid_argument&) {
    return RotationSystem::create(std::move(alphas), std::move(beta), RotationSystem::Check::relaxed);
  }
}

ordered_json to_json(const SynthesisCertificate& c) {
  ordered_json budget = ordered_json::array();
  for (const auto& line : c.budget_trace) {
    budget.push_back({{"stage", line.stage},
                      {"allocated", line.allocated.get_str()},
                      {"achieved", line.achieved.to_string()}});
  }
  return ordered_json{
      {"format", kCertificateFormat},
      {"system", system_to_json(*c.system)},
      {"target", c.target.to_string()},
      {"delta", c.delta.get_str()},
      {"word", c.word.to_string()},
      {"word_tokens", c.word.size()},
      {"word_letters", c.word.letter_count()},
      {"achieved_distance", c.achieved_distance.to_string()},
      {"achieved_decimal", to_decimal(c.achieved_distance, 12)},
      {"budget", budget},
  };
}

SynthesisCertificate certificate_from_json(const ordered_json& j) {
  if (j.value("format", std::string()) != kCertificateFormat) {
    throw ParseError(std::string("expected certificate format ") + kCertificateFormat);
  }
  SynthesisCertificate c;
  c.system = system_from_json(j.at("system"));
  c.target = ArcSet::parse(j.at("target").get<std::string>(), c.system->circles());
  c.delta = parse_rational(j.at("delta").get<std::string>());
  c.word = GeneratorWord::parse(j.at("word").get<std::string>());
  c.achieved_distance = CircleNumber::parse(j.at("achieved_distance").get<std::string>());
  for (const auto& line : j.value("budget", ordered_json::array())) {
    c.budget_trace.push_back({line.at("stage").get<std::string>(),
                              parse_rational(line.at("allocated").get<std::string>()),
                              CircleNumber::parse(line.at("achieved").get<std::string>())});
  }
  return c;
}

std::string to_text(const SynthesisCertificate& c) {
  std::string out;
  out += "system: circles=" + std::to_string(c.system->circles()) + " alphas=[";
  for (std::size_t i = 0; i < c.system->circles(); ++i) {
    if (i > 0) out += ", ";
    out += c.system->alpha(i).to_string();
  }
  out += "] beta=" + c.system->beta().to_string() + "\n";
  out += "target: " + c.target.to_string() + "\n";
  out += "delta: " + c.delta.get_str() + "\n";
  out += "word: " + c.word.to_string() + "\n";
  out += "word_tokens: " + std::to_string(c.word.size()) + "\n";
  out += "word_letters: " + std::to_string(c.word.letter_count()) + "\n";
  out += "achieved_distance: " + c.achieved_distance.to_string() + "\n";
  out += "achieved_decimal: " + to_decimal(c.achieved_distance, 12) + "\n";
  out += "budget:\n";
  for (const auto& line : c.budget_trace) {
    out += "  " + line.stage + " | allocated " + line.allocated.get_str() + " | achieved " +
           line.achieved.to_string() + "\n";
  }
  return out;
}

}  // namespace fullgroup
