#include "sumfree/sumfree.h"

#include <cstring>
#include <string>

#include "sumfree/build.hpp"
#include "sumfree/verify.hpp"

struct sumfree_space {
  sumfree::Space space;
};

struct sumfree_set {
  sumfree::GroupSet set;
};

namespace {

thread_local std::string g_last_error;

int record(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <class F>
int guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return SUMFREE_OK;
  } catch (const sumfree::Error& e) {
    return record(static_cast<int>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return record(SUMFREE_PARSE_ERROR, std::string("ParseError: ") + e.what());
  } catch (const std::bad_alloc&) {
    return record(SUMFREE_INTERNAL, "Internal: out of memory");
  } catch (const std::exception& e) {
    return record(SUMFREE_INTERNAL, std::string("Internal: ") + e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) sumfree::fail(sumfree::ErrorCode::invalid_argument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sumfree_set* wrap(sumfree::GroupSet g) { return new sumfree_set{std::move(g)}; }

}  // namespace

extern "C" {

const char* sumfree_version(void) { return sumfree::kSolverVersion; }

const char* sumfree_last_error(void) { return g_last_error.c_str(); }

const char* sumfree_status_name(int status) {
  if (status < 0 || status > SUMFREE_INTERNAL) return "Unknown";
  static thread_local std::string name;
  name = sumfree::error_name(static_cast<sumfree::ErrorCode>(status));
  return name.c_str();
}

void sumfree_string_free(char* s) { std::free(s); }

int sumfree_space_create(uint32_t p, uint32_t n, sumfree_space** out) {
  return guarded([&] {
    require(out, "null output");
    *out = new sumfree_space{sumfree::Space(p, n)};
  });
}

void sumfree_space_destroy(sumfree_space* s) { delete s; }
uint32_t sumfree_space_p(const sumfree_space* s) { return s ? s->space.p() : 0; }
uint32_t sumfree_space_n(const sumfree_space* s) { return s ? s->space.n() : 0; }
uint32_t sumfree_space_order(const sumfree_space* s) { return s ? s->space.order() : 0; }

int sumfree_space_index(const sumfree_space* s, const uint32_t* coords, size_t count, uint32_t* out) {
  return guarded([&] {
    require(s && coords && out, "null argument");
    require(count == s->space.n(), "coordinate count differs from n");
    for (size_t i = 0; i < count; ++i) require(coords[i] < s->space.p(), "coordinate out of range");
    *out = s->space.from_coords({coords, count}).index;
  });
}

int sumfree_set_create(const sumfree_space* s, const uint32_t* indices, size_t count, sumfree_set** out) {
  return guarded([&] {
    require(s && out && (indices || count == 0), "null argument");
    for (size_t i = 0; i < count; ++i) require(indices[i] < s->space.order(), "element index out of range");
    *out = wrap(sumfree::GroupSet(s->space, std::span<const std::uint32_t>(indices, count)));
  });
}

int sumfree_set_from_hex(const sumfree_space* s, const char* hex, sumfree_set** out) {
  return guarded([&] {
    require(s && hex && out, "null argument");
    *out = wrap(sumfree::GroupSet::from_hex(s->space, hex));
  });
}

void sumfree_set_destroy(sumfree_set* a) { delete a; }

int sumfree_set_to_hex(const sumfree_set* a, char** out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = dup(a->set.to_hex());
  });
}

size_t sumfree_set_size(const sumfree_set* a) { return a ? a->set.size() : 0; }

int sumfree_set_contains(const sumfree_set* a, uint32_t index) {
  return a && index < a->set.space().order() && a->set.contains(index);
}

int sumfree_set_indices(const sumfree_set* a, uint32_t* buf, size_t cap, size_t* count) {
  return guarded([&] {
    require(a && count && (buf || cap == 0), "null argument");
    const auto idx = a->set.indices();
    *count = idx.size();
    for (size_t i = 0; i < idx.size() && i < cap; ++i) buf[i] = idx[i];
  });
}

int sumfree_set_equal(const sumfree_set* a, const sumfree_set* b) { return a && b && a->set == b->set; }

int sumfree_sumset(const sumfree_set* a, const sumfree_set* b, sumfree_set** out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = wrap(sumfree::sumset(a->set, b->set));
  });
}

int sumfree_difference_set(const sumfree_set* a, const sumfree_set* b, sumfree_set** out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = wrap(sumfree::difference_set(a->set, b->set));
  });
}

int sumfree_dilate(const sumfree_set* a, uint32_t c, sumfree_set** out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = wrap(sumfree::dilate(a->set, c));
  });
}

int sumfree_symmetry_group(const sumfree_set* a, sumfree_set** out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = wrap(sumfree::symmetry_group(a->set));
  });
}

int sumfree_is_sum_free(const sumfree_set* a, int* out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = sumfree::is_sum_free(a->set);
  });
}

int sumfree_is_cuboid_covered(const sumfree_set* a, int* out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = sumfree::is_cuboid_covered(a->set);
  });
}

int sumfree_is_structured(const sumfree_set* a, int* out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = sumfree::recognize_structured(a->set).witness.has_value();
  });
}

int sumfree_construct(const sumfree_space* s, const char* family, const sumfree_set* param_set, int64_t direction,
                      uint32_t ell, const uint32_t* matrix, sumfree_set** out) {
  return guarded([&] {
    using namespace sumfree;
    require(s && family && out, "null argument");
    const Space& sp = s->space;
    const std::string f = family;
    std::optional<GroupSet> param;
    if (param_set) param = param_set->set;
    std::optional<Element> x;
    if (direction >= 0) {
      require(sp.n() >= 2, "a direction needs n >= 2");
      const Space q = sp.quotient();
      require(static_cast<uint64_t>(direction) < q.order(), "direction index out of range");
      x = Element{static_cast<std::uint32_t>(direction)};
    }
    if (f == "cuboid") {
      *out = wrap(cuboid(sp));
    } else if (f == "very_structured") {
      *out = wrap(very_structured(sp, param));
    } else if (f == "structured") {
      require(ell >= 1 && ell <= sp.n(), "ell must lie in [1, n]");
      LinearAuto phi = LinearAuto::identity(sp);
      if (matrix) phi = LinearAuto(sp, std::vector<Residue>(matrix, matrix + std::size_t{sp.n()} * sp.n()));
      *out = wrap(structured(sp, StructuredWitness{ell, phi, param}));
    } else if (f == "witness_sf2") {
      *out = wrap(witness_sf2_2mod3(sp, x));
    } else if (f == "witness_sf1") {
      *out = wrap(witness_sf1_1mod3(sp, x));
    } else if (f == "rs_low") {
      *out = wrap(rs_family(sp, RsVariant::low, param));
    } else if (f == "rs_high") {
      *out = wrap(rs_family(sp, RsVariant::high, param));
    } else if (f == "rs_split") {
      *out = wrap(rs_family(sp, RsVariant::split, param));
    } else {
      fail(ErrorCode::invalid_argument, "unknown family '" + f + "'");
    }
  });
}

int sumfree_sf_hierarchy_json(uint32_t p, uint32_t n, uint32_t k, uint64_t max_nodes, char** out) {
  return guarded([&] {
    require(out, "null output");
    sumfree::Budget budget;
    if (max_nodes) budget.max_nodes = max_nodes;
    const sumfree::Space s(p, n);
    *out = dup(sumfree::hierarchy_to_json(s, sumfree::sf_hierarchy(s, k, budget)).dump(2));
  });
}

int sumfree_oracle_json(uint32_t p, uint32_t n, char** out) {
  return guarded([&] {
    require(out, "null output");
    const sumfree::Space s(p, n);
    *out = dup(sumfree::to_json(s, 0, sumfree::oracle_max_sum_free(s)).dump(2));
  });
}

int sumfree_check_law_json(const char* law, uint32_t p, uint32_t n, const char* mode, uint64_t trials, uint64_t seed,
                           char** out, int* verdict_exit) {
  return guarded([&] {
    require(law && mode && out, "null argument");
    const sumfree::Space s(p, n);
    const auto report = sumfree::check_law(sumfree::parse_law(law), s, sumfree::parse_mode(mode), trials, seed);
    if (verdict_exit) *verdict_exit = sumfree::exit_code(report.verdict);
    *out = dup(sumfree::to_json(report).dump(2));
  });
}

int sumfree_verify_certificate_json(const char* json, int* valid, char** reason) {
  return guarded([&] {
    require(json && valid, "null argument");
    const auto check = sumfree::verify_certificate(nlohmann::json::parse(json));
    *valid = check.valid;
    if (reason) *reason = dup(check.reason);
  });
}

int sumfree_replay_json(const char* json, int* refails) {
  return guarded([&] {
    require(json && refails, "null argument");
    *refails = sumfree::replay_certificate(nlohmann::json::parse(json));
  });
}

int sumfree_describe_set_json(const sumfree_set* a, char** out) {
  return guarded([&] {
    using namespace sumfree;
    require(a && out, "null argument");
    const GroupSet& g = a->set;
    const Space& s = g.space();
    nlohmann::json j{{"p", s.p()}, {"n", s.n()}, {"size", g.size()}, {"sum_free", is_sum_free(g)}};
    if (s.p() % 3 == 1)
      j["cuboid_covered"] = nullptr;
    else
      j["cuboid_covered"] = is_cuboid_covered(g);
    const auto m = s.m_6m_minus_1();
    if (m && s.p() >= 11)
      j["structured"] = recognize_structured(g).witness.has_value();
    else
      j["structured"] = nullptr;
    j["hex"] = g.to_hex();
    j["elements"] = g.indices();
    *out = dup(j.dump(2));
  });
}

int sumfree_spectrum_csv(const sumfree_set* a, char** out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = dup(sumfree::spectrum_csv(a->set));
  });
}

}  // extern "C"
