// Command-line front end over the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cache.hpp"
#include "sumfree/sumfree.h"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitDomain = 65;

struct DomainError {
  int status;
  std::string message;
};

void check(int status) {
  if (status != SUMFREE_OK) throw DomainError{status, sumfree_last_error()};
}

struct SpaceDeleter {
  void operator()(sumfree_space* s) const { sumfree_space_destroy(s); }
};
struct SetDeleter {
  void operator()(sumfree_set* a) const { sumfree_set_destroy(a); }
};
using SpacePtr = std::unique_ptr<sumfree_space, SpaceDeleter>;
using SetPtr = std::unique_ptr<sumfree_set, SetDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  sumfree_string_free(s);
  return out;
}

SpacePtr make_space(std::uint32_t p, std::uint32_t n) {
  sumfree_space* s = nullptr;
  check(sumfree_space_create(p, n, &s));
  return SpacePtr(s);
}

// Accepts the hex encoding or a JSON array of element indices.
SetPtr parse_set(const sumfree_space* s, const std::string& text) {
  sumfree_set* a = nullptr;
  if (!text.empty() && text.front() == '[') {
    std::vector<std::uint32_t> idx;
    try {
      idx = nlohmann::json::parse(text).get<std::vector<std::uint32_t>>();
    } catch (const nlohmann::json::exception& e) {
      throw DomainError{SUMFREE_PARSE_ERROR, std::string("ParseError: ") + e.what()};
    }
    check(sumfree_set_create(s, idx.data(), idx.size(), &a));
  } else {
    check(sumfree_set_from_hex(s, text.c_str(), &a));
  }
  return SetPtr(a);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError{SUMFREE_INVALID_ARGUMENT, "cannot write " + path};
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

// ---------------------------------------------------------------------------

bool usable_cache_entry(const nlohmann::json& entry, const std::string& key) {
  if (!entry.is_object() || entry.value("key", "") != key || !entry.contains("certificate")) return false;
  const auto& cert = entry["certificate"];
  if (!cert.contains("levels")) return false;
  for (const auto& l : cert["levels"])
    if (l.value("status", "") != "proved" || !l.value("witnesses_complete", false)) return false;
  int valid = 0;
  char* reason = nullptr;
  const std::string text = cert.dump();
  if (sumfree_verify_certificate_json(text.c_str(), &valid, &reason) != SUMFREE_OK) return false;
  sumfree_string_free(reason);
  return valid == 1;
}

int run_sf(std::uint32_t p, std::uint32_t n, std::uint32_t k, std::uint64_t max_nodes, bool use_cache,
           const std::string& output) {
  const std::string key = sumfree_cli::cache_key(p, n, k, sumfree_version());
  const sumfree_cli::CertificateCache cache(sumfree_cli::CertificateCache::default_dir());

  std::optional<nlohmann::json> cert;
  if (use_cache) {
    if (auto text = cache.load(key)) {
      try {
        auto entry = nlohmann::json::parse(*text);
        if (usable_cache_entry(entry, key)) cert = entry["certificate"];
      } catch (const nlohmann::json::exception&) {
      }
      if (!cert) std::cerr << "cache entry for " << key << " rejected; recomputing\n";
    }
  }
  if (!cert) {
    char* out = nullptr;
    check(sumfree_sf_hierarchy_json(p, n, k, max_nodes, &out));
    cert = nlohmann::json::parse(take(out));
    bool proved = true;
    for (const auto& l : (*cert)["levels"])
      proved = proved && l["status"] == "proved" && l["witnesses_complete"].get<bool>();
    if (use_cache && proved) cache.store(key, nlohmann::json{{"key", key}, {"certificate", *cert}}.dump());
  }

  nlohmann::json table = nlohmann::json::array();
  std::string summary;
  bool proved = true;
  for (const auto& l : (*cert)["levels"]) {
    const bool ok = l["status"] == "proved";
    proved = proved && ok;
    if (!summary.empty()) summary += ", ";
    summary += ok ? std::to_string(l["value"].get<std::size_t>()) : "?";
    table.push_back({{"k", l["k"]}, {"value", l["value"]}, {"status", l["status"]}, {"witnesses", l["witness_count"]}});
  }
  nlohmann::json doc{{"p", p}, {"n", n}, {"k", k}, {"values", summary}, {"table", table}, {"certificate", *cert}};
  emit(doc.dump(2), output);
  return proved ? 0 : 3;
}

std::optional<std::vector<std::uint32_t>> parse_matrix(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    } catch (const std::exception&) {
      throw DomainError{SUMFREE_PARSE_ERROR, "ParseError: bad matrix entry '" + item + "'"};
    }
  }
  return out;
}

int run_construct(const std::string& family, std::uint32_t p, std::uint32_t n, const std::string& param,
                  std::int64_t x, std::uint32_t ell, const std::string& matrix, const std::string& output) {
  const SpacePtr space = make_space(p, n);
  SpacePtr param_space;
  SetPtr param_set;
  if (!param.empty()) {
    // P lives in F_p^(ell-1) (ell = n for very_structured); K in F_p^(n-1).
    const std::uint32_t dim = family == "structured" ? (ell ? ell - 1 : 0) : n - 1;
    if (dim == 0) throw DomainError{SUMFREE_BAD_P, "BadP: the parameter set needs a positive dimension"};
    param_space = make_space(p, dim);
    param_set = parse_set(param_space.get(), param);
  }
  const auto mat = parse_matrix(matrix);
  if (mat && mat->size() != std::size_t{n} * n)
    throw DomainError{SUMFREE_INVALID_ARGUMENT, "InvalidArgument: --auto needs n*n entries"};
  sumfree_set* out = nullptr;
  check(sumfree_construct(space.get(), family.c_str(), param_set.get(), x, ell ? ell : n, mat ? mat->data() : nullptr,
                          &out));
  const SetPtr result(out);
  char* desc = nullptr;
  check(sumfree_describe_set_json(result.get(), &desc));
  auto doc = nlohmann::json::parse(take(desc));
  doc["family"] = family;
  emit(doc.dump(2), output);
  return 0;
}

int run_verify(const std::string& law, std::uint32_t p, std::uint32_t n, const std::string& mode,
               std::uint64_t trials, std::uint64_t seed, const std::string& certificate, const std::string& output) {
  if (!certificate.empty()) {
    std::ifstream in(certificate, std::ios::binary);
    if (!in) throw DomainError{SUMFREE_INVALID_ARGUMENT, "cannot read " + certificate};
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
      throw DomainError{SUMFREE_PARSE_ERROR, std::string("ParseError: ") + e.what()};
    }
    // sf output wraps the certificate; law reports carry it under "certificate" too.
    if (doc.contains("certificate") && !doc.contains("levels")) doc = doc["certificate"];
    nlohmann::json result;
    int code = 0;
    if (doc.contains("law")) {
      int refails = 0;
      const std::string text = doc.dump();
      check(sumfree_replay_json(text.c_str(), &refails));
      result = {{"kind", "counterexample"}, {"refails", refails == 1}};
      code = refails ? 2 : 0;
    } else {
      int valid = 0;
      char* reason = nullptr;
      const std::string text = doc.dump();
      check(sumfree_verify_certificate_json(text.c_str(), &valid, &reason));
      result = {{"kind", "witnesses"}, {"valid", valid == 1}, {"reason", take(reason)}};
      code = valid ? 0 : kExitDomain;
    }
    emit(result.dump(2), output);
    return code;
  }
  char* out = nullptr;
  int verdict = 0;
  check(sumfree_check_law_json(law.c_str(), p, n, mode.c_str(), trials, seed, &out, &verdict));
  emit(take(out), output);
  return verdict;
}

int run_spectrum(std::uint32_t p, std::uint32_t n, const std::string& set, const std::string& output) {
  const SpacePtr space = make_space(p, n);
  const SetPtr a = parse_set(space.get(), set);
  char* out = nullptr;
  check(sumfree_spectrum_csv(a.get(), &out));
  emit(take(out), output);
  return 0;
}

int run_oracle(std::uint32_t p, std::uint32_t n, const std::string& output) {
  char* out = nullptr;
  check(sumfree_oracle_json(p, n, &out));
  emit(take(out), output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-free sets in F_p^n: exact hierarchy search, constructions and law checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sumfree_version()));

  std::uint32_t p = 0, n = 1, k = 0, ell = 0;
  std::uint64_t max_nodes = 0, trials = 1000, seed = 1;
  std::int64_t x = -1;
  std::string output, family, param, matrix, law, mode = "random", set, certificate;
  bool no_cache = false;

  auto* sf = app.add_subcommand("sf", "Levels 0..k of the sf hierarchy with witness certificates");
  sf->add_option("--p", p, "prime")->required();
  sf->add_option("--n", n, "dimension")->check(CLI::PositiveNumber);
  sf->add_option("--k", k, "highest level");
  sf->add_option("--max-nodes", max_nodes, "search node budget per level (0: default)");
  sf->add_flag("--no-cache", no_cache, "bypass the certificate cache");
  sf->add_option("--output,-o", output, "write to file");

  auto* construct = app.add_subcommand("construct", "Build a named family member and check its properties");
  construct->add_option("--family", family, "family")
      ->required()
      ->check(CLI::IsMember({"cuboid", "very_structured", "structured", "witness_sf2", "witness_sf1", "rs_low",
                             "rs_high", "rs_split"}));
  construct->add_option("--p", p, "prime")->required();
  construct->add_option("--n", n, "dimension")->check(CLI::PositiveNumber);
  construct->add_option("--P,--K", param, "parameter set: hex or JSON index array");
  construct->add_option("--x", x, "direction index in F_p^(n-1)");
  construct->add_option("--ell", ell, "structured: dimension of the very structured factor");
  construct->add_option("--auto", matrix, "structured: row-major automorphism matrix, comma separated");
  construct->add_option("--output,-o", output, "write to file");

  auto* verify = app.add_subcommand("verify", "Check a law, or re-verify a certificate file");
  verify->add_option("--law", law, "law id")
      ->check(CLI::IsMember({"cauchy_davenport", "vosper", "kneser", "bdumm", "lem42", "lemABCD",
                             "lem5_classification", "lem32_noncover", "lem6_classification", "prop21", "prop22",
                             "prop23", "prop24", "sf_formulas"}));
  verify->add_option("--p", p, "prime");
  verify->add_option("--n", n, "dimension")->check(CLI::PositiveNumber);
  verify->add_option("--mode", mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
  verify->add_option("--trials", trials, "random instances");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--certificate", certificate, "certificate file to re-verify");
  verify->add_option("--output,-o", output, "write to file");

  auto* spectrum = app.add_subcommand("spectrum", "Fourier coefficients of a set as CSV");
  spectrum->add_option("--p", p, "prime")->required();
  spectrum->add_option("--n", n, "dimension")->check(CLI::PositiveNumber);
  spectrum->add_option("--set", set, "hex or JSON index array")->required();
  spectrum->add_option("--output,-o", output, "write to file");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive maximum sum-free sets, p^n <= 25");
  oracle->add_option("--p", p, "prime")->required();
  oracle->add_option("--n", n, "dimension")->check(CLI::PositiveNumber);
  oracle->add_option("--output,-o", output, "write to file");

  try {
    app.parse(argc, argv);
    if (verify->parsed() && certificate.empty() && (law.empty() || p == 0))
      throw CLI::ValidationError("verify", "--law and --p are required unless --certificate is given");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (sf->parsed()) return run_sf(p, n, k, max_nodes, !no_cache, output);
    if (construct->parsed()) return run_construct(family, p, n, param, x, ell, matrix, output);
    if (verify->parsed()) return run_verify(law, p, n, mode, trials, seed, certificate, output);
    if (spectrum->parsed()) return run_spectrum(p, n, set, output);
    if (oracle->parsed()) return run_oracle(p, n, output);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitDomain;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
