#include "dp1/cli.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <utility>

#include "CLI11.hpp"

#include "dp1/alphac.hpp"
#include "dp1/coneops.hpp"
#include "dp1/kstab.hpp"
#include "dp1/rational.hpp"
#include "dp1/report.hpp"
#include "dp1/sampling.hpp"
#include "dp1/selfcheck.hpp"

namespace dp1 {

namespace {

std::size_t skip_ws(const std::string& s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

// Parses the rational in s[begin, end) after trimming; errors carry the
// position of the token inside the full input.
Rat rat_token(const std::string& s, std::size_t begin, std::size_t end) {
  std::size_t b = skip_ws(s, begin);
  std::size_t e = end;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (b >= e) throw ParseError("missing coefficient", begin);
  std::string tok = s.substr(b, e - b);
  try {
    return parse_rat(tok);
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational '" + tok + "'", b);
  }
}

DivClass parse_tuple(const std::string& s, std::size_t start) {
  std::size_t bad = s.find_first_of("KEB", start);
  if (bad != std::string::npos) throw AmbiguousForm(bad);
  DivClass out;
  std::size_t i = start;
  for (int k = 0; k < 9; ++k) {
    std::size_t comma = s.find(',', i);
    if (k < 8) {
      if (comma == std::string::npos) {
        throw ParseError("expected 9 coefficients, found " + std::to_string(k + 1),
                         s.size());
      }
    } else if (comma != std::string::npos) {
      throw ParseError("expected 9 coefficients, found more", comma);
    } else {
      comma = s.size();
    }
    out.coeffs[k] = rat_token(s, i, comma);
    i = comma + (k < 8 ? 1 : 0);
  }
  return out;
}

DivClass parse_symbolic(const std::string& s, std::size_t i) {
  DivClass acc = -canonical_class();
  i = skip_ws(s, i + 2);  // past "-K"
  while (i < s.size()) {
    if (s[i] == ',') throw AmbiguousForm(i);
    if (s[i] != '+') throw ParseError("expected '+' between terms", i);
    i = skip_ws(s, i + 1);
    std::size_t stop = s.find_first_of("*+,", i);
    if (stop == std::string::npos || s[stop] != '*') {
      if (stop != std::string::npos && s[stop] == ',') throw AmbiguousForm(stop);
      throw ParseError("expected '*' after coefficient",
                       stop == std::string::npos ? s.size() : stop);
    }
    Rat coeff = rat_token(s, i, stop);
    i = skip_ws(s, stop + 1);
    if (i >= s.size()) throw ParseError("expected E<i> or B:<tuple>", i);
    if (s[i] == 'E') {
      std::size_t d = i + 1;
      while (d < s.size() && std::isdigit(static_cast<unsigned char>(s[d]))) ++d;
      if (d == i + 1) throw ParseError("expected index after E", i + 1);
      int idx = std::stoi(s.substr(i + 1, d - i - 1));
      if (idx < 1 || idx > 8) {
        throw ParseError("exceptional index out of range 1..8", i + 1);
      }
      acc = acc + e_class(idx) * coeff;
      i = skip_ws(s, d);
    } else if (s[i] == 'B') {
      if (i + 1 >= s.size() || s[i + 1] != ':') {
        throw ParseError("expected ':' after B", i + 1);
      }
      i += 2;
      DivClass b;
      for (int k = 0; k < 9; ++k) {
        std::size_t end;
        if (k < 8) {
          end = s.find(',', i);
          if (end == std::string::npos) {
            throw ParseError("fiber tuple needs 9 coefficients", i);
          }
        } else {
          end = s.find('+', i);
          if (end == std::string::npos) end = s.size();
        }
        b.coeffs[k] = rat_token(s, i, end);
        i = (k < 8) ? end + 1 : end;
      }
      acc = acc + b * coeff;
      i = skip_ws(s, i);
    } else {
      throw ParseError("expected E<i> or B:<tuple>", i);
    }
  }
  return acc;
}

Normalization parse_normalization(const std::string& name) {
  if (name == "muA") return Normalization::MuA;
  if (name == "A") return Normalization::A;
  if (name == "both") return Normalization::Both;
  return Normalization::Default;
}

struct CommonOpts {
  std::string cls_spec;
  std::string format = "text";
  std::string normalization = "default";
  std::string out_file;
  bool extended = false;
  bool approx = false;
};

struct ScanOpts {
  std::vector<std::string> dirs;
  std::vector<std::string> ranges;
  std::vector<int> steps;
};

struct SuiteOpts {
  std::uint64_t seed = 1;
  int count = 10;
  int inject_drop_curves = 0;
  bool inject_perturb_formula = false;
};

// Routes the report to --out when given, otherwise to the session stream.
int with_target(const CommonOpts& opts, std::ostream& out, std::ostream& err,
                const std::function<int(std::ostream&)>& body) {
  if (opts.out_file.empty()) return body(out);
  std::ofstream file(opts.out_file);
  if (!file) {
    err << "error: cannot open output file '" << opts.out_file << "'\n";
    return 1;
  }
  return body(file);
}

void print_not_ample(std::ostream& err, const NotAmple& e) {
  err << "error: " << e.what() << " (pairing " << rat_str(e.pairing) << ")\n";
}

int cmd_check(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
  DivClass cls = parse_class(opts.cls_spec);
  AmpleCheck chk = is_ample(cls);
  int rc = with_target(opts, out, err, [&](std::ostream& t) {
    if (opts.format == "json") {
      t << check_json(cls, chk).dump(2) << "\n";
    } else {
      check_text(t, cls, chk);
    }
    return 0;
  });
  if (rc != 0) return rc;
  return chk.ample ? 0 : 2;
}

int cmd_decompose(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
  DivClass cls = parse_class(opts.cls_spec);
  Decomposition d;
  try {
    d = decompose(cls);
  } catch (const NotAmple& e) {
    if (opts.format == "json") {
      int rc = with_target(opts, out, err, [&](std::ostream& t) {
        t << not_ample_json("decompose", cls, e).dump(2) << "\n";
        return 0;
      });
      if (rc != 0) return rc;
    }
    print_not_ample(err, e);
    return 2;
  }
  return with_target(opts, out, err, [&](std::ostream& t) {
    if (opts.format == "json") {
      t << decompose_json(cls, d).dump(2) << "\n";
    } else {
      decompose_text(t, cls, d);
    }
    return 0;
  });
}

int cmd_alpha(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
  DivClass cls = parse_class(opts.cls_spec);
  ReportOptions ropt{parse_normalization(opts.normalization), opts.approx};
  Decomposition d;
  AlphaReport rep;
  try {
    d = decompose(cls);
    rep = compare_alpha(d, opts.extended);
  } catch (const NotAmple& e) {
    if (opts.format == "json") {
      int rc = with_target(opts, out, err, [&](std::ostream& t) {
        t << not_ample_json("alpha", cls, e).dump(2) << "\n";
        return 0;
      });
      if (rc != 0) return rc;
    }
    print_not_ample(err, e);
    return 2;
  }
  int rc = with_target(opts, out, err, [&](std::ostream& t) {
    if (opts.format == "json") {
      t << alpha_json(cls, d, rep, ropt).dump(2) << "\n";
    } else {
      alpha_text(t, cls, d, rep, ropt);
    }
    return 0;
  });
  if (rc != 0) return rc;
  if (!(rep.agree && rep.lemma_ok)) {
    err << "error: closed form and oracle disagree\n";
    return 3;
  }
  return 0;
}

int cmd_verdict(const CommonOpts& opts, std::ostream& out, std::ostream& err) {
  DivClass cls = parse_class(opts.cls_spec);
  ReportOptions ropt{parse_normalization(opts.normalization), opts.approx};
  VerdictOptions vopts;
  vopts.with_oracle = true;
  vopts.extended_oracle = opts.extended;
  Verdict v;
  try {
    v = verdict(cls, vopts);
  } catch (const NotAmple& e) {
    if (opts.format == "json") {
      int rc = with_target(opts, out, err, [&](std::ostream& t) {
        t << not_ample_json("verdict", cls, e).dump(2) << "\n";
        return 0;
      });
      if (rc != 0) return rc;
    }
    print_not_ample(err, e);
    return 2;
  }
  int rc = with_target(opts, out, err, [&](std::ostream& t) {
    if (opts.format == "json") {
      t << verdict_json(cls, v, ropt).dump(2) << "\n";
    } else {
      verdict_text(t, cls, v);
    }
    return 0;
  });
  if (rc != 0) return rc;
  if (v.alpha_report && !(v.alpha_report->agree && v.alpha_report->lemma_ok)) {
    err << "error: closed form and oracle disagree\n";
    return 3;
  }
  return 0;
}

std::pair<Rat, Rat> parse_range(const std::string& text) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParseError("range must look like lo:hi", text.size());
  }
  Rat lo = rat_token(text, 0, colon);
  Rat hi = rat_token(text, colon + 1, text.size());
  if (!(lo < hi)) throw ParseError("range needs lo < hi", 0);
  return {lo, hi};
}

int cmd_scan(const CommonOpts& opts, const ScanOpts& sopts, std::ostream& out,
             std::ostream& err) {
  if (sopts.dirs.empty() || sopts.dirs.size() > 2) {
    err << "error: scan needs one or two --scan-dir classes\n";
    return 1;
  }
  ScanGrid grid;
  grid.base = parse_class(opts.cls_spec);
  for (const std::string& d : sopts.dirs) grid.directions.push_back(parse_class(d));
  const std::size_t dims = grid.directions.size();
  if (sopts.ranges.size() > dims || sopts.steps.size() > dims) {
    err << "error: more --range/--steps than scan directions\n";
    return 1;
  }
  for (std::size_t i = 0; i < dims; ++i) {
    if (i < sopts.ranges.size()) {
      grid.ranges.push_back(parse_range(sopts.ranges[i]));
    } else if (!sopts.ranges.empty()) {
      grid.ranges.push_back(grid.ranges[0]);  // one range broadcasts
    } else {
      grid.ranges.push_back({Rat(0), Rat(1)});
    }
    if (i < sopts.steps.size()) {
      grid.steps.push_back(sopts.steps[i]);
    } else if (!sopts.steps.empty()) {
      grid.steps.push_back(sopts.steps[0]);
    } else {
      grid.steps.push_back(10);
    }
  }
  ReportOptions ropt{parse_normalization(opts.normalization), opts.approx};
  std::vector<ScanRow> rows = run_scan(grid, opts.extended);
  int rc = with_target(opts, out, err, [&](std::ostream& t) {
    if (opts.format == "json") {
      t << scan_json(grid, rows, opts.extended, ropt).dump(2) << "\n";
    } else if (opts.format == "csv") {
      t << scan_csv(grid, rows, ropt);
    } else {
      scan_text(t, grid, rows, ropt);
    }
    return 0;
  });
  if (rc != 0) return rc;
  for (const ScanRow& row : rows) {
    if (row.verdict && row.verdict->alpha_report &&
        !(row.verdict->alpha_report->agree && row.verdict->alpha_report->lemma_ok)) {
      err << "error: closed form and oracle disagree at lambda1="
          << rat_str(row.lambdas[0]) << "\n";
      return 3;
    }
  }
  return 0;
}

int cmd_compare(const CommonOpts& opts, const SuiteOpts& sopts, std::ostream& out,
                std::ostream& err) {
  std::vector<Sample> suite = sample_suite(sopts.seed, sopts.count);
  std::vector<CompareRow> rows;
  rows.reserve(suite.size());
  bool all_ok = true;
  for (const Sample& s : suite) {
    Decomposition d = decompose(s.cls);
    AlphaReport rep = compare_alpha(d, opts.extended);
    CompareRow row;
    row.name = s.name;
    row.cls = s.cls;
    row.kind = kind_str(d);
    row.branch = alpha_branch_name(rep.closed.branch);
    row.closed = rep.closed.value;
    row.oracle = rep.oracle.value;
    row.agree = rep.agree;
    row.lemma_ok = rep.lemma_ok;
    all_ok = all_ok && rep.agree && rep.lemma_ok;
    rows.push_back(std::move(row));
  }
  int rc = with_target(opts, out, err, [&](std::ostream& t) {
    if (opts.format == "json") {
      t << compare_json(sopts.seed, sopts.count, opts.extended, rows).dump(2) << "\n";
    } else {
      compare_text(t, rows);
    }
    return 0;
  });
  if (rc != 0) return rc;
  if (!all_ok) {
    err << "error: closed form and oracle disagree on the suite\n";
    return 3;
  }
  return 0;
}

int cmd_selftest(const CommonOpts& opts, const SuiteOpts& sopts, std::ostream& out,
                 std::ostream& err) {
  SelftestConfig cfg;
  cfg.seed = sopts.seed;
  cfg.per_stratum = sopts.count;
  cfg.extended_oracle = opts.extended;
  cfg.inject_drop_curves = sopts.inject_drop_curves;
  cfg.inject_perturb_formula = sopts.inject_perturb_formula;
  SelftestReport rep = run_selftest(cfg);
  int rc = with_target(opts, out, err, [&](std::ostream& t) {
    if (opts.format == "json") {
      t << selftest_json(cfg, rep).dump(2) << "\n";
    } else {
      selftest_text(t, rep);
    }
    return 0;
  });
  if (rc != 0) return rc;
  if (!rep.all_pass) {
    err << "error: selftest properties failed\n";
    return 3;
  }
  return 0;
}

}  // namespace

DivClass parse_class(const std::string& text) {
  std::size_t i = skip_ws(text, 0);
  if (i >= text.size()) throw ParseError("empty class", i);
  if (text[i] == '-' && i + 1 < text.size() && text[i + 1] == 'K') {
    return parse_symbolic(text, i);
  }
  return parse_tuple(text, i);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"K-stability toolkit for ample classes on degree-1 del Pezzo surfaces",
               "dp1kstab"};
  app.require_subcommand(1);

  CommonOpts opts;
  ScanOpts sopts;
  SuiteOpts uopts;

  auto add_common = [&](CLI::App* sub, bool with_class) {
    if (with_class) {
      sub->add_option("--class", opts.cls_spec,
                      "divisor class: 9-tuple or -K + a1*E1 + ... + a*B:<tuple>")
          ->required();
    }
    sub->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", opts.out_file, "write the report to a file");
    sub->add_flag("--approx", opts.approx,
                  "append 12-digit decimal companions to exact values");
  };
  auto add_analysis = [&](CLI::App* sub) {
    sub->add_option("--normalization", opts.normalization,
                    "which alpha/slope normalizations to report")
        ->check(CLI::IsMember({"default", "A", "muA", "both"}));
    sub->add_flag("--extended-oracle", opts.extended,
                  "widen the oracle candidate set to the conic classes");
  };
  auto add_suite = [&](CLI::App* sub) {
    sub->add_option("--seed", uopts.seed, "suite seed");
    sub->add_option("--count", uopts.count, "instances per stratum")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* c_check = app.add_subcommand("check", "ampleness check with witness");
  add_common(c_check, true);

  CLI::App* c_dec = app.add_subcommand("decompose", "boundary decomposition of K + mu*A");
  add_common(c_dec, true);

  CLI::App* c_alpha = app.add_subcommand("alpha", "alpha_c closed form vs oracle");
  add_common(c_alpha, true);
  add_analysis(c_alpha);

  CLI::App* c_verdict = app.add_subcommand("verdict", "full K-stability verdict");
  add_common(c_verdict, true);
  add_analysis(c_verdict);

  CLI::App* c_scan = app.add_subcommand("scan", "verdict scan over an affine family");
  add_common(c_scan, true);
  add_analysis(c_scan);
  c_scan->add_option("--scan-dir", sopts.dirs, "scan direction class (repeat for 2d)");
  c_scan->add_option("--range", sopts.ranges, "half-open lambda range lo:hi per direction");
  c_scan->add_option("--steps", sopts.steps, "grid steps per direction")
      ->check(CLI::PositiveNumber);

  CLI::App* c_cmp = app.add_subcommand("oracle-compare",
                                       "closed form vs oracle on a stratified suite");
  add_common(c_cmp, false);
  add_analysis(c_cmp);
  add_suite(c_cmp);

  CLI::App* c_self = app.add_subcommand("selftest", "bundled invariant suite");
  add_common(c_self, false);
  c_self->add_flag("--extended-oracle", opts.extended,
                   "widen the oracle candidate set to the conic classes");
  add_suite(c_self);
  c_self->add_option("--inject-drop-curves", uopts.inject_drop_curves)->group("");
  c_self->add_flag("--inject-perturb-formula", uopts.inject_perturb_formula)->group("");

  std::vector<const char*> argv;
  argv.push_back("dp1kstab");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (opts.format == "csv" && !app.got_subcommand(c_scan)) {
    err << "error: csv output is only available for scan\n";
    return 1;
  }

  try {
    if (app.got_subcommand(c_check)) return cmd_check(opts, out, err);
    if (app.got_subcommand(c_dec)) return cmd_decompose(opts, out, err);
    if (app.got_subcommand(c_alpha)) return cmd_alpha(opts, out, err);
    if (app.got_subcommand(c_verdict)) return cmd_verdict(opts, out, err);
    if (app.got_subcommand(c_scan)) return cmd_scan(opts, sopts, out, err);
    if (app.got_subcommand(c_cmp)) return cmd_compare(opts, uopts, out, err);
    if (app.got_subcommand(c_self)) return cmd_selftest(opts, uopts, out, err);
  } catch (const ParseError& e) {
    err << "parse error at position " << e.position << ": " << e.what() << "\n";
    return 1;
  } catch (const NotAmple& e) {
    print_not_ample(err, e);
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  err << "error: no command\n";
  return 1;
}

}  // namespace dp1
