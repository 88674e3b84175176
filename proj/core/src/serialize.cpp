#include <cctype>
#include <string>

#include <nlohmann/json.hpp>
#include "stablab/challenges.hpp"
#include "stablab/common.hpp"
#include "stablab/irs.hpp"

namespace stablab {

using nlohmann::json;

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  auto bad = [&] { return InvalidArgument("malformed rational \"" + s + "\""); };
  auto integer = [&](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) throw bad();
    for (std::size_t j = i; j < t.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(t[j]))) throw bad();
    }
    return boost::multiprecision::cpp_int(std::string(t[0] == '+' ? t.substr(1) : t));
  };
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const auto den = integer(std::string_view(s).substr(slash + 1));
    if (den == 0) throw InvalidArgument("rational \"" + s + "\" has zero denominator");
    return Rational(integer(std::string_view(s).substr(0, slash)), den);
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    const std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    const bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty()) throw bad();
    const auto w = integer(whole);
    const auto f = integer(frac);
    if (frac[0] == '-' || frac[0] == '+') throw bad();
    boost::multiprecision::cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational out(w);
    out += neg ? Rational(-f, scale) : Rational(f, scale);
    return out;
  }
  return Rational(integer(s));
}

namespace {

json words_of(const CylinderFingerprint& f) {
  json out = json::array();
  for (const auto& w : f) out.push_back(w.str());
  return out;
}

}  // namespace

std::string to_jsonl(const ExactIRS& irs) {
  std::string out;
  for (const auto& [f, m] : irs.masses) {
    out += json{{"r", irs.radius}, {"W", words_of(f)}, {"mass", to_string(m)}}.dump() + "\n";
  }
  return out;
}

std::string to_jsonl(const ApproxIRS& irs) {
  std::string out;
  for (const auto& [f, m] : irs.masses) {
    json row{{"r", irs.radius}, {"W", words_of(f)}, {"mass", m}};
    if (auto it = irs.stderr_of.find(f); it != irs.stderr_of.end()) row["stderr"] = it->second;
    if (irs.n_samples) row["n_samples"] = *irs.n_samples;
    if (irs.tolerance > 0) row["tolerance"] = irs.tolerance;
    out += row.dump() + "\n";
  }
  return out;
}

std::string fset_pair_to_json(const FSetPair& pair) {
  auto side = [](const FiniteGSet& g) {
    json out = json::array();
    for (const auto& p : g.perms()) out.push_back(p.images());
    return out;
  };
  return json{{"size", pair.x.degree()}, {"rank", pair.x.rank()}, {"X", side(pair.x)}, {"Y", side(pair.y)}}
      .dump();
}

FSetPair fset_pair_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    const auto size = j.at("size").get<std::size_t>();
    const auto rank = j.at("rank").get<int>();
    auto side = [&](const char* key) {
      std::vector<Perm> perms;
      for (const auto& images : j.at(key)) perms.emplace_back(images.get<std::vector<std::uint32_t>>());
      if (static_cast<int>(perms.size()) != rank) {
        throw InvalidArgument(std::string("side ") + key + " does not have rank " + std::to_string(rank));
      }
      FiniteGSet g(std::move(perms));
      if (g.degree() != size) {
        throw InvalidArgument(std::string("side ") + key + " does not have size " + std::to_string(size));
      }
      return g;
    };
    return FSetPair(side("X"), side("Y"));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed instance: ") + e.what());
  }
}

}  // namespace stablab
