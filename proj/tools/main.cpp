// polychamber: classify length vectors, list chambers, print tables, run checks.
// Talks to the library only through the C interface.

#include "polychamber/polychamber.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitNongeneric = 2;

struct Owned {
  char* p = nullptr;
  ~Owned() { pcs_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Failure {
  pcs_status status;
  std::string message;
};

void check(pcs_status status) {
  if (status != PCS_OK) throw Failure{status, pcs_last_error()};
}

int parse_d(const std::string& text) {
  if (text.empty() || text == "symbolic" || text == "d") return PCS_D_SYMBOLIC;
  try {
    std::size_t used = 0;
    int d = std::stoi(text, &used);
    if (used == text.size() && d >= 2) return d;
  } catch (const std::exception&) {
  }
  throw Failure{PCS_ERR_PARSE, "--d expects an integer >= 2 or 'symbolic', got '" + text + "'"};
}

pcs_format parse_format(const std::string& text) {
  pcs_format f;
  check(pcs_format_parse(text.c_str(), &f));
  return f;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Reports the first differing line; returns true on an exact match.
bool compare_golden(const std::string& actual, const std::string& golden, const std::string& path) {
  if (actual == golden) {
    std::cerr << "golden: match " << path << "\n";
    return true;
  }
  std::istringstream a(actual), g(golden);
  std::string la, lg;
  for (int line = 1;; ++line) {
    bool ha = static_cast<bool>(std::getline(a, la)), hg = static_cast<bool>(std::getline(g, lg));
    if (!ha && !hg) break;
    if (!ha || !hg || la != lg) {
      std::cerr << "golden: mismatch in " << path << " at line " << line << "\n"
                << "  expected: " << (hg ? lg : "<end of file>") << "\n"
                << "  actual:   " << (ha ? la : "<end of output>") << "\n";
      return false;
    }
  }
  std::cerr << "golden: mismatch in " << path << " (line endings or trailing bytes)\n";
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chambers of polygon and chain spaces: genetic codes, tables and checks"};
  app.require_subcommand(1);

  std::string format_name = "text";
  std::string d_text = "symbolic";
  std::string target_name;
  std::string lengths;
  std::string golden_dir;
  int m = 0;
  bool unsafe = false;

  auto* classify = app.add_subcommand("classify", "Classify a length vector");
  classify->add_option("--lengths", lengths, "Comma-separated rational lengths, e.g. 1,1,2,2,3")->required();
  classify->add_option("--d", d_text, "Ambient dimension for Ch^d and Morse data (integer or 'symbolic')");
  classify->add_option("--target", target_name, "Only this description: chain, planar or spatial");

  auto* enumerate = app.add_subcommand("enumerate", "List every chamber for m edges");
  auto* table = app.add_subcommand("table", "Chamber table with a_min, N^2, N^3 and Ch^d");
  table->add_option("--d", d_text, "Substitute d in the Ch column (integer or 'symbolic')");
  table->add_option("--golden", golden_dir, "Compare text output against <dir>/table_m<m>.txt");
  auto* verify = app.add_subcommand("verify", "Run the invariant suites for m (worker count: POLYCHAMBER_THREADS)");

  for (auto* sub : {enumerate, table, verify}) sub->add_option("--m", m, "Number of edges")->required();
  for (auto* sub : {classify, enumerate, table, verify}) {
    sub->add_option("--format", format_name, "text, json or tsv");
    sub->add_flag("--unsafe-large-m", unsafe, "Lift the default limits on m");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFailure;
  }

  try {
    const pcs_format format = parse_format(format_name);
    const int d = parse_d(d_text);

    if (*classify) {
      pcs_classify_options opt{d, PCS_TARGET_ALL, unsafe};
      if (!target_name.empty()) {
        pcs_target t;
        check(pcs_target_parse(target_name.c_str(), &t));
        opt.target = t;
      }
      Owned report;
      int reordered = 0;
      uint64_t wall = 0;
      pcs_status st = pcs_classify(lengths.c_str(), &opt, format, &report.p, &reordered, &wall);
      if (st != PCS_OK && st != PCS_ERR_NONGENERIC) check(st);
      if (reordered) std::cerr << "warning: input was not sorted; classified its nondecreasing rearrangement\n";
      std::cout << report.str();
      if (st == PCS_ERR_NONGENERIC) {
        std::cerr << "nongeneric: " << pcs_last_error() << "\n";
        return kExitNongeneric;
      }
      return kExitOk;
    }

    if (*enumerate) {
      Owned out;
      check(pcs_enumerate(m, format, unsafe, &out.p));
      std::cout << out.str();
      return kExitOk;
    }

    if (*table) {
      Owned out;
      check(pcs_table(m, d, format, unsafe, &out.p));
      std::cout << out.str();
      if (!golden_dir.empty()) {
        if (format != PCS_FORMAT_TEXT || d != PCS_D_SYMBOLIC)
          throw Failure{PCS_ERR_INVALID_ARGUMENT, "--golden compares text output with symbolic d"};
        const std::string path = golden_dir + "/table_m" + std::to_string(m) + ".txt";
        auto golden = read_file(path);
        if (!golden) throw Failure{PCS_ERR_INVALID_ARGUMENT, "cannot read " + path};
        if (!compare_golden(out.str(), *golden, path)) return kExitFailure;
      }
      return kExitOk;
    }

    if (*verify) {
      Owned out;
      int passed = 0;
      check(pcs_verify(m, 0, format, &out.p, &passed));
      std::cout << out.str();
      return passed ? kExitOk : kExitFailure;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << pcs_status_name(f.status) << ": " << f.message << "\n";
    if (f.status == PCS_ERR_BOUND) std::cerr << "(pass --unsafe-large-m to lift the limit)\n";
    return f.status == PCS_ERR_NONGENERIC ? kExitNongeneric : kExitFailure;
  }
  return kExitFailure;
}
