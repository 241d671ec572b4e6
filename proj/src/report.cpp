#include <cstdio>
#include <sstream>

#include "sumfree/verify.hpp"

namespace sumfree {

nlohmann::json to_json(const LawReport& r) {
  nlohmann::json j{{"law", to_string(r.law)}, {"p", r.p},
                   {"n", r.n},                {"mode", to_string(r.mode)},
                   {"trials", r.trials},      {"applicable", r.applicable},
                   {"verdict", to_string(r.verdict)}, {"seed", r.seed}};
  if (r.certificate) j["certificate"] = *r.certificate;
  return j;
}

nlohmann::json to_json(const Space& s, std::uint32_t k, const SearchOutcome& o) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : o.witnesses) witnesses.push_back(w.to_hex());
  return nlohmann::json{{"p", s.p()},
                        {"n", s.n()},
                        {"k", k},
                        {"value", o.value},
                        {"status", to_string(o.status)},
                        {"witnesses", witnesses},
                        {"witness_count", o.witness_count},
                        {"witnesses_complete", o.witnesses_complete},
                        {"dedup", to_string(o.dedup)},
                        {"nodes", o.nodes}};
}

nlohmann::json hierarchy_to_json(const Space& s, const std::vector<SearchOutcome>& levels) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t j = 0; j < levels.size(); ++j) arr.push_back(to_json(s, static_cast<std::uint32_t>(j), levels[j]));
  return nlohmann::json{{"p", s.p()},
                        {"n", s.n()},
                        {"k", levels.empty() ? 0 : levels.size() - 1},
                        {"solver", kSolverVersion},
                        {"levels", arr}};
}

namespace {

CertificateCheck bad(std::string why) { return {false, std::move(why)}; }

}  // namespace

CertificateCheck verify_certificate(const nlohmann::json& cert) {
  try {
    const Space s(cert.at("p").get<std::uint32_t>(), cert.at("n").get<std::uint32_t>());
    std::vector<nlohmann::json> levels;
    if (cert.contains("levels")) {
      for (const auto& l : cert.at("levels")) levels.push_back(l);
      if (levels.size() != cert.at("k").get<std::size_t>() + 1) return bad("level count does not match k");
    } else {
      levels.push_back(cert);
    }

    std::vector<GroupSet> earlier;
    bool earlier_complete = true;
    for (std::size_t j = 0; j < levels.size(); ++j) {
      const auto& l = levels[j];
      if (l.at("p").get<std::uint32_t>() != s.p() || l.at("n").get<std::uint32_t>() != s.n())
        return bad("level space differs from the certificate space");
      const auto value = l.at("value").get<std::size_t>();
      const bool proved = l.at("status").get<std::string>() == "proved";
      std::vector<GroupSet> here;
      for (const auto& h : l.at("witnesses")) {
        GroupSet w = GroupSet::from_hex(s, h.get<std::string>());
        if (!is_sum_free(w)) return bad("witness is not sum-free at level " + std::to_string(j));
        if (w.size() != value) return bad("witness size differs from the value at level " + std::to_string(j));
        if (earlier_complete)
          for (const auto& b : earlier)
            if (w.is_subset_of(b)) return bad("witness lies inside an earlier extremal set at level " + std::to_string(j));
        here.push_back(std::move(w));
      }
      if (proved && value > 0 && here.empty()) return bad("proved level without witnesses");
      for (std::size_t i = 1; i < here.size(); ++i)
        if (!hex_less(here[i - 1], here[i])) return bad("witnesses are not sorted and distinct");
      earlier_complete = earlier_complete && l.value("witnesses_complete", true) && proved;
      earlier.insert(earlier.end(), here.begin(), here.end());
    }
    return {true, ""};
  } catch (const nlohmann::json::exception& e) {
    return bad(std::string("malformed certificate: ") + e.what());
  } catch (const Error& e) {
    return bad(std::string("invalid certificate: ") + e.what());
  }
}

std::string spectrum_csv(const GroupSet& a) {
  const Space& s = a.space();
  const Spectrum spec = spectrum(a);
  std::ostringstream out;
  out << "index,re,im\n";
  char buf[96];
  for (std::uint32_t y = 0; y < s.order(); ++y) {
    const auto v = spec.values[y];
    std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g\n", y, v.real(), v.imag());
    out << buf;
  }
  return out.str();
}

}  // namespace sumfree
