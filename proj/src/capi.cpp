#include "polychamber/polychamber.h"

#include "polychamber/errors.hpp"
#include "polychamber/report.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using namespace polychamber;

struct pcs_lengths {
  LengthVector value;
};
struct pcs_code {
  GeneticCode value;
};
struct pcs_expr {
  SpaceExpr value;
};

namespace {

thread_local std::string last_error;

template <class F>
pcs_status guard(F&& f) {
  last_error.clear();
  try {
    f();
    return PCS_OK;
  } catch (const ParseError& e) {
    last_error = e.what();
    return PCS_ERR_PARSE;
  } catch (const NongenericError& e) {
    last_error = e.what();
    return PCS_ERR_NONGENERIC;
  } catch (const UnsortedError& e) {
    last_error = e.what();
    return PCS_ERR_UNSORTED;
  } catch (const DomainError& e) {
    last_error = e.what();
    return PCS_ERR_DOMAIN;
  } catch (const BoundExceeded& e) {
    last_error = e.what();
    return PCS_ERR_BOUND;
  } catch (const EmptyChamber& e) {
    last_error = e.what();
    return PCS_ERR_EMPTY_CHAMBER;
  } catch (const UnknownDescription& e) {
    last_error = e.what();
    return PCS_ERR_UNKNOWN_DESCRIPTION;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PCS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PCS_ERR_INTERNAL;
  }
}

struct InvalidArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::optional<int> d_of(int d) {
  if (d == PCS_D_SYMBOLIC) return std::nullopt;
  if (d < 2) throw DomainError("d must be at least 2");
  return d;
}

Target target_of(int t) {
  switch (t) {
    case PCS_TARGET_CHAIN: return Target::Chain;
    case PCS_TARGET_PLANAR: return Target::Planar;
    case PCS_TARGET_SPATIAL: return Target::Spatial;
    default: throw InvalidArgument("unknown target");
  }
}

Format format_of(pcs_format f) {
  switch (f) {
    case PCS_FORMAT_TEXT: return Format::Text;
    case PCS_FORMAT_JSON: return Format::Json;
    case PCS_FORMAT_TSV: return Format::Tsv;
  }
  throw InvalidArgument("unknown format");
}

// InvalidArgument is local to this layer; everything else maps through guard().
template <class F>
pcs_status call(F&& f) {
  last_error.clear();
  try {
    f();
    return PCS_OK;
  } catch (const InvalidArgument& e) {
    last_error = e.what();
    return PCS_ERR_INVALID_ARGUMENT;
  } catch (...) {
    return guard([] { throw; });
  }
}

}  // namespace

extern "C" {

const char* pcs_last_error(void) { return last_error.c_str(); }

const char* pcs_status_name(pcs_status status) {
  switch (status) {
    case PCS_OK: return "ok";
    case PCS_ERR_PARSE: return "parse error";
    case PCS_ERR_NONGENERIC: return "nongeneric";
    case PCS_ERR_UNSORTED: return "unsorted";
    case PCS_ERR_DOMAIN: return "domain error";
    case PCS_ERR_BOUND: return "bound exceeded";
    case PCS_ERR_EMPTY_CHAMBER: return "empty chamber";
    case PCS_ERR_UNKNOWN_DESCRIPTION: return "unknown description";
    case PCS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PCS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void pcs_string_free(char* s) { std::free(s); }

pcs_status pcs_lengths_parse(const char* text, pcs_lengths** out) {
  return call([&] {
    require(text && out, "null argument");
    *out = new pcs_lengths{LengthVector::parse(text)};
  });
}

void pcs_lengths_free(pcs_lengths* a) { delete a; }

int pcs_lengths_m(const pcs_lengths* a) { return a ? a->value.m() : 0; }

pcs_status pcs_lengths_to_string(const pcs_lengths* a, char** out) {
  return call([&] {
    require(a && out, "null argument");
    *out = dup(a->value.to_string());
  });
}

pcs_status pcs_lengths_find_wall(const pcs_lengths* a, int* on_wall, uint64_t* wall_bits) {
  return call([&] {
    require(a && on_wall, "null argument");
    auto wall = find_wall(a->value);
    *on_wall = wall.has_value();
    if (wall_bits) *wall_bits = wall ? wall->bits() : 0;
  });
}

pcs_status pcs_code_parse(const char* text, int m, pcs_code** out) {
  return call([&] {
    require(text && out, "null argument");
    *out = new pcs_code{GeneticCode::parse(text, m)};
  });
}

void pcs_code_free(pcs_code* code) { delete code; }

int pcs_code_m(const pcs_code* code) { return code ? code->value.m() : 0; }

int pcs_code_equal(const pcs_code* a, const pcs_code* b) { return a && b && a->value == b->value; }

pcs_status pcs_code_to_string(const pcs_code* code, int unicode, char** out) {
  return call([&] {
    require(code && out, "null argument");
    *out = dup(code->value.to_string(unicode != 0));
  });
}

pcs_status pcs_genetic_code(const pcs_lengths* a, pcs_code** out) {
  return call([&] {
    require(a && out, "null argument");
    if (!a->value.is_sorted()) throw UnsortedError("length vector is not sorted nondecreasingly");
    if (auto wall = find_wall(a->value))
      throw NongenericError(wall->bits(), a->value.m(), "length vector lies on the wall " + wall_string(*wall));
    *out = new pcs_code{genetic_code(a->value)};
  });
}

pcs_status pcs_tiny_edge(const pcs_code* code, pcs_code** out) {
  return call([&] {
    require(code && out, "null argument");
    *out = new pcs_code{tiny_edge(code->value)};
  });
}

pcs_status pcs_a_min(const pcs_code* code, pcs_lengths** out) {
  return call([&] {
    require(code && out, "null argument");
    *out = new pcs_lengths{a_min(code->value)};
  });
}

pcs_status pcs_chamber_count(int m, int allow_large_m, size_t* out) {
  return call([&] {
    require(out, "null argument");
    *out = enumerate_chambers(m, {allow_large_m != 0}).size();
  });
}

pcs_status pcs_chamber_at(int m, size_t index, int allow_large_m, pcs_code** out) {
  return call([&] {
    require(out, "null argument");
    const auto& chambers = enumerate_chambers(m, {allow_large_m != 0});
    if (index >= chambers.size()) throw DomainError("chamber index out of range");
    *out = new pcs_code{chambers[index].code};
  });
}

pcs_status pcs_describe(const pcs_code* code, pcs_target target, int d, pcs_expr** out) {
  return call([&] {
    require(code && out, "null argument");
    SpaceQuery q{target_of(target), target == PCS_TARGET_CHAIN ? d_of(d) : std::nullopt};
    *out = new pcs_expr{describe(code->value, q)};
  });
}

pcs_status pcs_expr_parse(const char* text, pcs_expr** out) {
  return call([&] {
    require(text && out, "null argument");
    *out = new pcs_expr{SpaceExpr::parse(text)};
  });
}

void pcs_expr_free(pcs_expr* x) { delete x; }

pcs_status pcs_expr_render(const pcs_expr* x, int unicode, char** out) {
  return call([&] {
    require(x && out, "null argument");
    *out = dup(x->value.render(unicode ? RenderStyle::Unicode : RenderStyle::Ascii));
  });
}

pcs_status pcs_expr_euler(const pcs_expr* x, int* known, int64_t* out) {
  return call([&] {
    require(x && known && out, "null argument");
    auto chi = euler_char(x->value);
    *known = chi.has_value();
    *out = chi.value_or(0);
  });
}

int pcs_expr_is_unknown(const pcs_expr* x) { return x && x->value.contains_unknown(); }

pcs_status pcs_coverage(int m, pcs_target target, size_t* described, size_t* total) {
  return call([&] {
    require(described && total, "null argument");
    auto [d, t] = coverage(m, SpaceQuery{target_of(target), std::nullopt});
    *described = d;
    *total = t;
  });
}

pcs_status pcs_euler_boundary_check(const pcs_code* code, int* passed, int64_t* chain_euler, int64_t* expected) {
  return call([&] {
    require(code && passed, "null argument");
    auto r = euler_boundary_check(code->value);
    *passed = r.passed;
    if (chain_euler) *chain_euler = r.chain_euler;
    if (expected) *expected = r.expected;
  });
}

pcs_status pcs_format_parse(const char* name, pcs_format* out) {
  return call([&] {
    require(name && out, "null argument");
    switch (parse_format(name)) {
      case Format::Text: *out = PCS_FORMAT_TEXT; break;
      case Format::Json: *out = PCS_FORMAT_JSON; break;
      case Format::Tsv: *out = PCS_FORMAT_TSV; break;
    }
  });
}

pcs_status pcs_target_parse(const char* name, pcs_target* out) {
  return call([&] {
    require(name && out, "null argument");
    switch (parse_target(name)) {
      case Target::Chain: *out = PCS_TARGET_CHAIN; break;
      case Target::Planar: *out = PCS_TARGET_PLANAR; break;
      case Target::Spatial: *out = PCS_TARGET_SPATIAL; break;
    }
  });
}

pcs_status pcs_classify(const char* lengths, const pcs_classify_options* options, pcs_format format, char** report,
                        int* reordered, uint64_t* wall_bits) {
  bool nongeneric = false;
  auto status = call([&] {
    require(lengths && report, "null argument");
    ClassifyOptions opt;
    if (options) {
      opt.d = d_of(options->d);
      if (options->target != PCS_TARGET_ALL) opt.target = target_of(options->target);
      opt.allow_large_m = options->allow_large_m != 0;
    }
    auto r = classify(LengthVector::parse(lengths), opt);
    *report = dup(render_classify(r, format_of(format)));
    if (reordered) *reordered = r.reordered;
    if (wall_bits) *wall_bits = r.wall ? r.wall->bits() : 0;
    if (r.wall) {
      nongeneric = true;
      last_error = "length vector lies on the wall " + wall_string(*r.wall);
    }
  });
  return status == PCS_OK && nongeneric ? PCS_ERR_NONGENERIC : status;
}

pcs_status pcs_table(int m, int d, pcs_format format, int allow_large_m, char** out) {
  return call([&] {
    require(out, "null argument");
    *out = dup(render_table(m, d_of(d), format_of(format), {allow_large_m != 0}));
  });
}

pcs_status pcs_enumerate(int m, pcs_format format, int allow_large_m, char** out) {
  return call([&] {
    require(out, "null argument");
    *out = dup(render_enumeration(m, format_of(format), {allow_large_m != 0}));
  });
}

pcs_status pcs_verify(int m, unsigned threads, pcs_format format, char** out, int* passed) {
  return call([&] {
    require(out, "null argument");
    auto r = verify(m, threads ? threads : worker_count());
    *out = dup(render_verify(r, format_of(format)));
    if (passed) *passed = r.passed();
  });
}

}  // extern "C"
