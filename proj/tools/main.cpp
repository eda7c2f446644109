// sobolev-oracle: command-line surface over the embedding classifier and the
// numerical verification layer.  Subcommands: decide, scan, verify, refute.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sobolev/decision.hpp"
#include "sobolev/errors.hpp"
#include "sobolev/profile.hpp"
#include "sobolev/serialize.hpp"
#include "sobolev/verify.hpp"

namespace {

using namespace sobolev;

struct TupleFlags {
  int dim = 0;
  std::string a, b, c, p, r;
};

void add_tuple_flags(CLI::App* cmd, TupleFlags& t, bool with_b_c = true) {
  cmd->add_option("--dim", t.dim, "space dimension N (integer >= 1)")->required();
  cmd->add_option("--a", t.a, "sup-norm weight exponent (exact rational)")->required();
  if (with_b_c) {
    cmd->add_option("--b", t.b, "gradient weight exponent (exact rational)")->required();
    cmd->add_option("--c", t.c, "target weight exponent (exact rational)")->required();
  }
  cmd->add_option("--p", t.p, "gradient integrability exponent (exact rational)")->required();
  cmd->add_option("--r", t.r, "target integrability exponent (exact rational)")->required();
}

EmbeddingParams parse_tuple(const TupleFlags& t) {
  EmbeddingParams params;
  params.dim = t.dim;
  params.a = rat_from_string(t.a);
  params.b = rat_from_string(t.b);
  params.c = rat_from_string(t.c);
  params.p = rat_from_string(t.p);
  params.r = rat_from_string(t.r);
  validate(params);
  return params;
}

int write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    std::cerr << "cannot open for writing: " << path << "\n";
    return 4;
  }
  os << text;
  os.flush();
  if (!os) {
    std::cerr << "write failed: " << path << "\n";
    return 4;
  }
  return 0;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  return write_text_file(out_path, text);
}

// ---------------------------------------------------------------------------
// decide

int run_decide(const TupleFlags& flags, bool as_json) {
  const EmbeddingParams params = parse_tuple(flags);
  const Verdict v = decide_embedding(params);
  if (as_json) {
    std::cout << verdict_to_json(params, v).dump(2) << "\n";
    return 0;
  }
  std::ostringstream os;
  os << "holds: " << (v.holds ? "yes" : "no") << "\n";
  if (v.holds) {
    os << "case: " << case_name(*v.case_label) << "\n";
    os << "inequality: " << inequality_name(v.inequality->kind)
       << " (theta = " << rat_to_string(v.inequality->theta)
       << ", target weight = " << rat_to_string(v.inequality->c_used) << ")\n";
  } else {
    os << "failure: " << failure_name(v.failure->tag) << "\n";
    if (v.failure->scaling_exponent_k)
      os << "scaling exponent k = " << rat_to_string(*v.failure->scaling_exponent_k)
         << "\n";
  }
  os << "c0 = " << rat_to_string(v.derived.c0) << ", c1 = " << rat_to_string(v.derived.c1)
     << ", p* = " << ext_to_string(v.derived.p_star);
  if (v.derived.theta_c) os << ", theta_c = " << rat_to_string(*v.derived.theta_c);
  os << "\n";
  std::cout << os.str();
  return 0;
}

// ---------------------------------------------------------------------------
// scan

struct GridRange {
  Rat lo, hi;
  int n = 0;
};

GridRange parse_range(const std::string& text, const char* which) {
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw InvalidParams(which, "expected lo:hi:n");
  GridRange g;
  g.lo = rat_from_string(text.substr(0, first));
  g.hi = rat_from_string(text.substr(first + 1, second - first - 1));
  try {
    size_t used = 0;
    g.n = std::stoi(text.substr(second + 1), &used);
    if (used != text.size() - second - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InvalidParams(which, "grid count must be an integer");
  }
  if (g.n < 2) throw InvalidParams(which, "grid count must be >= 2");
  return g;
}

Rat grid_point(const GridRange& g, int i) {
  Rat q = g.lo + (g.hi - g.lo) * Rat(i) / Rat(g.n - 1);
  q.canonicalize();
  return q;
}

int thread_count() {
  int configured = 0;
  if (const char* env = std::getenv("SOBOLEV_ORACLE_THREADS")) {
    try {
      configured = std::stoi(env);
    } catch (const std::exception&) {
      configured = 0;
    }
  }
  if (configured <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    configured = hw == 0 ? 1 : static_cast<int>(hw);
  }
  return configured;
}

const char* case_fill(const Verdict& v) {
  if (!v.holds) return "#bbbbbb";
  switch (*v.case_label) {
    case EmbeddingCase::SameSideInterior: return "#4477aa";
    case EmbeddingCase::OppositeInterior: return "#ee6677";
    case EmbeddingCase::GradientEndpoint: return "#228833";
    case EmbeddingCase::Critical: return "#ccbb44";
  }
  return "#bbbbbb";
}

std::string render_svg(const std::vector<std::string>& fills, const GridRange& gb,
                       const GridRange& gc) {
  const int nb = gb.n, nc = gc.n;
  const double plot_w = 800.0, plot_h = 560.0, margin = 40.0, legend_h = 40.0;
  const double width = plot_w + 2 * margin;
  const double height = plot_h + 2 * margin + legend_h;
  const double cw = plot_w / nb, ch = plot_h / nc;
  char buf[256];
  std::ostringstream os;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                width, height, width, height);
  os << buf;
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"#ffffff\"/>\n";
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nc; ++j) {
      const double x = margin + i * cw;
      const double y = margin + (nc - 1 - j) * ch;
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" "
                    "fill=\"%s\"/>\n",
                    x, y, cw + 0.05, ch + 0.05, fills[i * nc + j].c_str());
      os << buf;
    }
  }
  // Axis extent labels
  os << "<text x=\"" << margin << "\" y=\"" << (margin + plot_h + 16)
     << "\" font-size=\"12\" font-family=\"monospace\">b=" << rat_to_string(gb.lo)
     << "</text>\n";
  os << "<text x=\"" << (margin + plot_w - 60) << "\" y=\"" << (margin + plot_h + 16)
     << "\" font-size=\"12\" font-family=\"monospace\">b=" << rat_to_string(gb.hi)
     << "</text>\n";
  os << "<text x=\"4\" y=\"" << (margin + plot_h) << "\" font-size=\"12\" "
     << "font-family=\"monospace\">c=" << rat_to_string(gc.lo) << "</text>\n";
  os << "<text x=\"4\" y=\"" << (margin + 10) << "\" font-size=\"12\" "
     << "font-family=\"monospace\">c=" << rat_to_string(gc.hi) << "</text>\n";
  // Legend
  const char* labels[5] = {"case i", "case ii", "case iii", "case iv", "fails"};
  const char* colors[5] = {"#4477aa", "#ee6677", "#228833", "#ccbb44", "#bbbbbb"};
  for (int k = 0; k < 5; ++k) {
    const double lx = margin + k * 150.0;
    const double ly = margin + plot_h + legend_h;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"14\" height=\"14\" "
                  "fill=\"%s\"/><text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" "
                  "font-family=\"monospace\">%s</text>\n",
                  lx, ly, colors[k], lx + 20.0, ly + 12.0, labels[k]);
    os << buf;
  }
  os << "</svg>\n";
  return os.str();
}

int run_scan(const TupleFlags& flags, const std::string& b_range,
             const std::string& c_range, const std::string& out_csv,
             const std::string& out_svg) {
  const GridRange gb = parse_range(b_range, "b-range");
  const GridRange gc = parse_range(c_range, "c-range");
  EmbeddingParams base;
  base.dim = flags.dim;
  base.a = rat_from_string(flags.a);
  base.p = rat_from_string(flags.p);
  base.r = rat_from_string(flags.r);
  base.b = gb.lo;
  base.c = gc.lo;
  validate(base);

  const int nb = gb.n, nc = gc.n;
  std::vector<std::string> rows(static_cast<size_t>(nb));
  std::vector<std::string> fills(static_cast<size_t>(nb) * nc);
  auto fill_row = [&](int i) {
    EmbeddingParams params = base;
    params.b = grid_point(gb, i);
    std::ostringstream os;
    for (int j = 0; j < nc; ++j) {
      params.c = grid_point(gc, j);
      const Verdict v = decide_embedding(params);
      os << rat_to_string(params.b) << ',' << rat_to_string(params.c) << ','
         << (v.holds ? '1' : '0') << ',' << (v.holds ? case_name(*v.case_label) : "-")
         << ',' << (v.holds ? rat_to_string(v.inequality->theta) : "-") << '\n';
      fills[static_cast<size_t>(i) * nc + j] = case_fill(v);
    }
    rows[static_cast<size_t>(i)] = os.str();
  };

  const int want = thread_count();
  const int workers = std::min(want, nb);
  if (workers <= 1) {
    for (int i = 0; i < nb; ++i) fill_row(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (int i = w; i < nb; i += workers) fill_row(i);
      });
    }
    for (std::thread& th : pool) th.join();
  }

  std::string csv = "b,c,holds,case,theta\n";
  for (const std::string& row : rows) csv += row;
  if (const int rc = write_text_file(out_csv, csv); rc != 0) return rc;
  if (!out_svg.empty()) {
    if (const int rc = write_text_file(out_svg, render_svg(fills, gb, gc)); rc != 0)
      return rc;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

std::vector<std::pair<std::string, ProfilePtr>> builtin_profiles() {
  // Compactly supported in (0, oo), so every membership norm is finite for any
  // admissible parameter pack.
  return {
      {"bump_narrow", log_bump(0.0, 1.0)},
      {"bump_wide", log_bump(0.5, 2.0)},
      {"tilted_bump", product(power(-1.0), log_bump(-1.0, 1.5))},
  };
}

int run_verify(const TupleFlags& flags, const std::string& family, int lambda_decades,
               const std::string& out_path) {
  const EmbeddingParams params = parse_tuple(flags);
  if (lambda_decades < 0) throw InvalidParams("lambda-decades", "must be >= 0");
  const Verdict v = decide_embedding(params);
  if (!v.holds) {
    std::cerr << "embedding does not hold; use refute\n";
    return 2;
  }
  std::vector<std::pair<std::string, ProfilePtr>> profiles;
  if (family == "auto") {
    profiles = builtin_profiles();
  } else {
    for (auto& entry : builtin_profiles())
      if (entry.first == family) profiles.push_back(entry);
    if (profiles.empty())
      throw InvalidParams("family", "unknown profile family: " + family);
  }
  std::vector<double> lambdas;
  for (int d = -lambda_decades; d <= lambda_decades; ++d)
    lambdas.push_back(std::pow(10.0, d));

  const RatioReport report = scale_invariance_check(params, profiles, lambdas);
  if (const int rc = emit(ratio_report_to_json(report).dump(2) + "\n", out_path); rc != 0)
    return rc;
  return report.scale_invariance_spread <= 1.0 + 1e-6 ? 0 : 3;
}

// ---------------------------------------------------------------------------
// refute

int run_refute(const TupleFlags& flags, int budget, const std::string& out_path) {
  const EmbeddingParams params = parse_tuple(flags);
  const Verdict v = decide_embedding(params);
  if (v.holds) {
    std::cerr << "embedding holds; nothing to refute\n";
    return 2;
  }
  RefutationEvidence ev = refute(params, budget);
  return emit(evidence_to_json(ev).dump(2) + "\n", out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact classifier and numerical certifier for weighted Sobolev "
               "embeddings of radial type"};
  app.require_subcommand(1);

  TupleFlags decide_flags;
  bool decide_json = false;
  CLI::App* cmd_decide = app.add_subcommand("decide", "classify one parameter tuple");
  add_tuple_flags(cmd_decide, decide_flags);
  cmd_decide->add_flag("--json", decide_json, "emit the verdict record as JSON");

  TupleFlags scan_flags;
  std::string b_range, c_range, scan_out, scan_svg;
  CLI::App* cmd_scan = app.add_subcommand("scan", "classify a (b, c) grid to CSV/SVG");
  add_tuple_flags(cmd_scan, scan_flags, /*with_b_c=*/false);
  cmd_scan->add_option("--b-range", b_range, "gradient weight grid as lo:hi:n")->required();
  cmd_scan->add_option("--c-range", c_range, "target weight grid as lo:hi:n")->required();
  cmd_scan->add_option("--out", scan_out, "CSV output path")->required();
  cmd_scan->add_option("--svg", scan_svg, "optional SVG raster output path");

  TupleFlags verify_flags;
  std::string family = "auto";
  int lambda_decades = 3;
  std::string verify_out;
  CLI::App* cmd_verify =
      app.add_subcommand("verify", "certify scale-invariance of the verdict inequality");
  add_tuple_flags(cmd_verify, verify_flags);
  cmd_verify->add_option("--family", family, "profile family: auto or a named profile");
  cmd_verify->add_option("--lambda-decades", lambda_decades,
                         "scale grid spans 10^-k .. 10^k");
  cmd_verify->add_option("--out", verify_out, "report path (default: stdout)");

  TupleFlags refute_flags;
  int budget = 256;
  std::string refute_out;
  CLI::App* cmd_refute =
      app.add_subcommand("refute", "produce witness evidence against a failing tuple");
  add_tuple_flags(cmd_refute, refute_flags);
  cmd_refute->add_option("--budget", budget, "max witness sweep steps");
  cmd_refute->add_option("--out", refute_out, "evidence path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cmd_decide->parsed()) return run_decide(decide_flags, decide_json);
    if (cmd_scan->parsed())
      return run_scan(scan_flags, b_range, c_range, scan_out, scan_svg);
    if (cmd_verify->parsed())
      return run_verify(verify_flags, family, lambda_decades, verify_out);
    if (cmd_refute->parsed()) return run_refute(refute_flags, budget, refute_out);
  } catch (const BudgetExhausted& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const InvalidParams& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const PreconditionViolated& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return 0;
}
