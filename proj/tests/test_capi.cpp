// The C interface, exercised the way a C caller would use it.

#include "polychamber/polychamber.h"

#include <doctest.h>

#include <string>

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  pcs_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("C API: lengths, codes and chambers") {
  pcs_lengths* a = nullptr;
  REQUIRE(pcs_lengths_parse("1,1,2,2,3,4", &a) == PCS_OK);
  CHECK(pcs_lengths_m(a) == 6);
  pcs_code* c = nullptr;
  REQUIRE(pcs_genetic_code(a, &c) == PCS_OK);
  char* s = nullptr;
  REQUIRE(pcs_code_to_string(c, 1, &s) == PCS_OK);
  CHECK(take(s) == "⟨621,64⟩");
  REQUIRE(pcs_code_to_string(c, 0, &s) == PCS_OK);
  CHECK(take(s) == "<621,64>");

  pcs_lengths* amin = nullptr;
  REQUIRE(pcs_a_min(c, &amin) == PCS_OK);
  REQUIRE(pcs_lengths_to_string(amin, &s) == PCS_OK);
  CHECK(take(s) == "(1,1,2,2,3,4)");

  pcs_code* parsed = nullptr;
  REQUIRE(pcs_code_parse("<631,65>", 0, &parsed) == PCS_OK);
  pcs_code* plus = nullptr;
  REQUIRE(pcs_tiny_edge(parsed, &plus) == PCS_OK);
  REQUIRE(pcs_code_to_string(plus, 0, &s) == PCS_OK);
  CHECK(take(s) == "<7421,761>");
  CHECK(pcs_code_m(plus) == 7);
  CHECK_FALSE(pcs_code_equal(plus, c));

  size_t n = 0;
  REQUIRE(pcs_chamber_count(6, 0, &n) == PCS_OK);
  CHECK(n == 21);
  pcs_code* first = nullptr;
  REQUIRE(pcs_chamber_at(4, 2, 0, &first) == PCS_OK);
  REQUIRE(pcs_code_to_string(first, 0, &s) == PCS_OK);
  CHECK(take(s) == "<41>");
  CHECK(pcs_chamber_at(4, 3, 0, &first) == PCS_ERR_DOMAIN);

  pcs_code_free(first);
  pcs_code_free(plus);
  pcs_code_free(parsed);
  pcs_lengths_free(amin);
  pcs_code_free(c);
  pcs_lengths_free(a);
  pcs_code_free(nullptr);
}

TEST_CASE("C API: error codes") {
  pcs_lengths* a = nullptr;
  CHECK(pcs_lengths_parse("1,x", &a) == PCS_ERR_PARSE);
  CHECK(std::string(pcs_last_error()).size() > 0);
  CHECK(pcs_lengths_parse(nullptr, &a) == PCS_ERR_INVALID_ARGUMENT);

  REQUIRE(pcs_lengths_parse("1,1,1,1", &a) == PCS_OK);
  int on_wall = 0;
  uint64_t bits = 0;
  REQUIRE(pcs_lengths_find_wall(a, &on_wall, &bits) == PCS_OK);
  CHECK(on_wall == 1);
  CHECK(bits == 0b1100);
  pcs_code* c = nullptr;
  CHECK(pcs_genetic_code(a, &c) == PCS_ERR_NONGENERIC);
  CHECK(std::string(pcs_last_error()).find("{3,4}") != std::string::npos);
  pcs_lengths_free(a);

  REQUIRE(pcs_lengths_parse("3,1,1,1", &a) == PCS_OK);
  CHECK(pcs_genetic_code(a, &c) == PCS_ERR_UNSORTED);
  pcs_lengths_free(a);

  size_t n = 0;
  CHECK(pcs_chamber_count(10, 0, &n) == PCS_ERR_BOUND);
  CHECK(pcs_code_parse("<65,64>", 0, &c) != PCS_OK);

  pcs_code* empty = nullptr;
  REQUIRE(pcs_code_parse("<>", 5, &empty) == PCS_OK);
  pcs_code_free(empty);

  char* out = nullptr;
  CHECK(pcs_table(4, 1, PCS_FORMAT_TEXT, 0, &out) == PCS_ERR_DOMAIN);
  CHECK(pcs_table(4, 0, static_cast<pcs_format>(7), 0, &out) == PCS_ERR_INVALID_ARGUMENT);
  CHECK(std::string(pcs_status_name(PCS_ERR_BOUND)) == "bound exceeded");
}

TEST_CASE("C API: descriptions") {
  pcs_code* c = nullptr;
  REQUIRE(pcs_code_parse("<65>", 0, &c) == PCS_OK);
  pcs_expr* x = nullptr;
  REQUIRE(pcs_describe(c, PCS_TARGET_SPATIAL, PCS_D_SYMBOLIC, &x) == PCS_OK);
  char* s = nullptr;
  REQUIRE(pcs_expr_render(x, 0, &s) == PCS_OK);
  CHECK(take(s) == "CP^3 # 5(~CP^3)");
  int known = 0;
  int64_t chi = 0;
  REQUIRE(pcs_expr_euler(x, &known, &chi) == PCS_OK);
  CHECK(known == 1);
  CHECK(chi == 14);
  pcs_expr_free(x);

  REQUIRE(pcs_describe(c, PCS_TARGET_CHAIN, PCS_D_SYMBOLIC, &x) == PCS_OK);
  REQUIRE(pcs_expr_euler(x, &known, &chi) == PCS_OK);
  CHECK(known == 0);
  pcs_expr_free(x);

  int passed = 0;
  int64_t ch = 0, expected = 0;
  REQUIRE(pcs_euler_boundary_check(c, &passed, &ch, &expected) == PCS_OK);
  CHECK(passed == 1);
  pcs_code_free(c);

  REQUIRE(pcs_expr_parse("S2x_{S1}(S^3)", &x) == PCS_OK);
  REQUIRE(pcs_expr_render(x, 1, &s) == PCS_OK);
  CHECK(take(s) == "S²×_{S¹}(S^3)");
  CHECK_FALSE(pcs_expr_is_unknown(x));
  pcs_expr_free(x);
  CHECK(pcs_expr_parse("S^2 #", &x) == PCS_ERR_PARSE);

  size_t described = 0, total = 0;
  REQUIRE(pcs_coverage(6, PCS_TARGET_PLANAR, &described, &total) == PCS_OK);
  CHECK(described == 21);
  CHECK(total == 21);
}

TEST_CASE("C API: reports") {
  char* out = nullptr;
  int reordered = 0;
  uint64_t wall = 0;
  pcs_classify_options opt{PCS_D_SYMBOLIC, PCS_TARGET_ALL, 0};
  CHECK(pcs_classify("1,1,1,1", &opt, PCS_FORMAT_TEXT, &out, &reordered, &wall) == PCS_ERR_NONGENERIC);
  CHECK(wall == 0b1100);
  CHECK(take(out).find("wall: {3,4}") != std::string::npos);

  REQUIRE(pcs_classify("2,1,1,1", nullptr, PCS_FORMAT_TEXT, &out, &reordered, &wall) == PCS_OK);
  CHECK(reordered == 1);
  CHECK(wall == 0);
  CHECK(take(out).find("code: ⟨4⟩") != std::string::npos);

  pcs_target t;
  REQUIRE(pcs_target_parse("planar", &t) == PCS_OK);
  opt.target = t;
  REQUIRE(pcs_classify("1,1,2,2,3", &opt, PCS_FORMAT_TEXT, &out, nullptr, nullptr) == PCS_OK);
  auto text = take(out);
  CHECK(text.find("N^2: Sigma_2") != std::string::npos);
  CHECK(text.find("N^3") == std::string::npos);

  REQUIRE(pcs_table(4, PCS_D_SYMBOLIC, PCS_FORMAT_TEXT, 0, &out) == PCS_OK);
  CHECK(take(out).find("⟨41⟩ (0,1,1,1) S^1 u S^1 / S^2 / S^{d-1} x S^{d-2}\n") != std::string::npos);
  REQUIRE(pcs_enumerate(5, PCS_FORMAT_TSV, 0, &out) == PCS_OK);
  CHECK(take(out).rfind("code\tm\taMin\twitness\n", 0) == 0);
  int passed = 0;
  REQUIRE(pcs_verify(5, 1, PCS_FORMAT_TEXT, &out, &passed) == PCS_OK);
  CHECK(passed == 1);
  CHECK(take(out).find("all suites passed") != std::string::npos);
  pcs_format f;
  CHECK(pcs_format_parse("yaml", &f) == PCS_ERR_PARSE);
}
