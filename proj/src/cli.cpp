#include "crystalk/cli.hpp"

#include "crystalk/linalg.hpp"
#include "crystalk/repring.hpp"
#include "crystalk/verify.hpp"
#include "crystalk/zpmod.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

namespace crystalk {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Integer json_integer(const nlohmann::json& v) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? Integer(v.get<unsigned long>()) : Integer(v.get<long>());
  if (v.is_string()) {
    Integer out;
    if (out.set_str(v.get<std::string>(), 10) == 0) return out;
  }
  throw ConfigError("matrix entries must be integers, got " + v.dump());
}

GammaDescriptor load_matrix(const std::string& path, std::optional<long> p_flag) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read matrix file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("matrix file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("p") || !j.contains("matrix") || !j["matrix"].is_array())
    throw ConfigError("matrix file must be an object {\"p\": int, \"matrix\": [[int, ...], ...]}");
  if (!j["p"].is_number_integer()) throw ConfigError("matrix file: p must be an integer");
  const long p = j["p"].get<long>();
  if (p_flag && *p_flag != p)
    throw ConfigError("--p " + std::to_string(*p_flag) + " disagrees with p = " + std::to_string(p) + " in " + path);
  const auto& rows = j["matrix"];
  const std::size_t cols = rows.empty() || !rows[0].is_array() ? 0 : rows[0].size();
  IntMatrix rho(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != cols) throw ConfigError("matrix rows must have equal lengths");
    for (std::size_t c = 0; c < cols; ++c) rho(r, c) = json_integer(rows[r][c]);
  }
  if (rho.rows() == 0) throw ConfigError("matrix is empty");
  return validate_gamma(p, rho);
}

GammaDescriptor resolve(const CliConfig& cfg) {
  if (cfg.k.has_value() == cfg.matrix_file.has_value()) throw ConfigError("give exactly one of --k and --matrix");
  if (cfg.matrix_file) return load_matrix(*cfg.matrix_file, cfg.p);
  if (!cfg.p) throw ConfigError("--p is required with --k");
  return canonical_gamma(*cfg.p, *cfg.k);
}

void emit(const CliConfig& cfg, const std::string& text, std::ostream& out) {
  if (!cfg.output) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(*cfg.output, std::ios::binary);
  if (!f) throw IoError("cannot open output file " + *cfg.output);
  f << text;
  f.flush();
  if (!f) throw IoError("failed writing output file " + *cfg.output);
}

// Maps every failure class onto its exit code; diagnostics go to err only.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const VerificationAborted& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::internal;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::internal;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::io;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::validation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::internal;
  }
}

std::string join(const std::vector<Integer>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
  return s;
}

std::string descriptor_line(const GammaDescriptor& g) {
  return "descriptor: p=" + std::to_string(g.p) + " n=" + std::to_string(g.n) + " k=" + std::to_string(g.k) +
         " canonical=" + (g.canonical ? "yes" : "no") + " rho=" + g.rho.to_string() + "\n";
}

}  // namespace

std::optional<DegreeWindow> parse_degree_window(const std::string& text) {
  static const std::regex form(R"(\s*(-?\d+)\s*(?::\s*(-?\d+)\s*)?)");
  std::smatch m;
  if (!std::regex_match(text, m, form)) return std::nullopt;
  try {
    DegreeWindow w;
    w.lo = std::stol(m[1].str());
    w.hi = m[2].matched ? std::stol(m[2].str()) : w.lo;
    if (w.lo > w.hi) return std::nullopt;
    return w;
  } catch (const std::out_of_range&) {
    return std::nullopt;
  }
}

int run_report(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const GammaDescriptor g = resolve(cfg);
    ReportOptions opts;
    opts.window = cfg.degree_window;
    opts.parallel = cfg.parallel;
    opts.run_oracles = cfg.matrix_file.has_value();
    const TheoremReport rep = build_report(g, opts);
    for (const auto& w : rep.warnings) err << "warning: " << w << "\n";
    emit(cfg, cfg.format == Format::json ? render_json(rep) : render_text(rep), out);
    return exit_code::ok;
  });
}

int run_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const GammaDescriptor g = resolve(cfg);
    VerifyOptions opts;
    opts.parallel = cfg.parallel;
    const auto results = run_verification(g, opts);
    std::size_t failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::ostringstream os;
    if (cfg.format == Format::json) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& r : results)
        rows.push_back({{"suite", r.suite}, {"name", r.name}, {"context", r.context}, {"passed", r.passed},
                        {"detail", r.detail}});
      nlohmann::json j = {{"p", g.p}, {"k", g.k}, {"checks", rows}, {"failed", failed}, {"total", results.size()}};
      os << j.dump(2) << "\n";
    } else {
      std::size_t w_suite = 5, w_name = 4;
      for (const auto& r : results) {
        w_suite = std::max(w_suite, r.suite.size());
        w_name = std::max(w_name, r.name.size());
      }
      for (const auto& r : results) {
        os << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(w_suite)) << r.suite << "  "
           << std::setw(static_cast<int>(w_name)) << r.name << "  " << r.context;
        if (!r.passed && !r.detail.empty()) os << "  [" << r.detail << "]";
        os << "\n";
      }
      os << results.size() - failed << "/" << results.size() << " checks passed for p=" << g.p << " k=" << g.k
         << "\n";
    }
    emit(cfg, os.str(), out);
    if (failed > 0) err << failed << " verification checks failed\n";
    return failed == 0 ? exit_code::ok : exit_code::check_failed;
  });
}

int run_oracle(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const GammaDescriptor g = resolve(cfg);
    const long n = static_cast<long>(g.n);
    std::vector<Integer> a, s;
    for (long j = 0; j <= n; ++j) a.push_back(a_j(g.p, g.k, j));
    for (long m = 0; m <= n + 1; ++m) s.push_back(s_m(g.p, g.k, m));
    const std::vector<Integer> r = r_vector(g.p, g.k);

    const ZpModule lattice(g.p, g.rho);
    std::vector<std::string> fixed_ranks;
    std::vector<std::vector<std::string>> tate_rows;
    for (long j = 0; j <= n; ++j) {
      std::vector<std::string> row;
      try {
        const ZpModule m = exterior_power(lattice, static_cast<std::size_t>(j));
        fixed_ranks.push_back(std::to_string(invariants(m).rank));
        for (long i = 0; i <= 3; ++i) row.push_back(tate(m, i).to_string());
      } catch (const ModuleError& e) {
        fixed_ranks.push_back("?");
        row.assign(4, "skipped");
        err << "warning: exterior degree " << j << " skipped: " << e.what() << "\n";
      }
      tate_rows.push_back(row);
    }

    std::ostringstream os;
    os << descriptor_line(g);
    os << "r: " << join(r) << " | a: " << join(a) << " | s: " << join(s) << "\n";
    Integer total = 0;
    for (const auto& v : r) total += v;
    os << "r (representation ring): " << join(r) << "  sum=" << total.get_str() << "\n";
    os << "r (invariant rank of exterior powers):";
    for (const auto& f : fixed_ranks) os << " " << f;
    os << "\n";
    os << "tate cohomology of exterior powers (rows j, columns i = 0 1 2 3):\n";
    for (long j = 0; j <= n; ++j) {
      os << "  j=" << j << ":";
      for (const auto& cell : tate_rows[j]) os << " " << cell;
      os << "\n";
    }
    const IntMatrix shifted = g.rho - IntMatrix::identity(g.n);
    os << "coker(rho - 1) smith diagonal: " << join(smith_invariants(shifted)) << " => "
       << cokernel_structure(shifted).to_string() << "\n";
    emit(cfg, os.str(), out);
    return exit_code::ok;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact (co)homology and K-theory of crystallographic groups Z^n x| Z/p", "crystalk"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string degrees, format = "text";
  long p = 0, k = 0;
  std::string matrix, output;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", p, "prime order of the point group");
    sub->add_option("--k", k, "number of cyclotomic blocks; n = k(p-1)");
    sub->add_option("--matrix", matrix, "JSON file {\"p\": int, \"matrix\": [[...]]} giving rho");
    sub->add_option("--degrees", degrees, "degree window lo:hi overriding the defaults");
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--parallel", cfg.parallel, "evaluate independent cells concurrently");
    sub->add_option("--output", output, "write the result to this file instead of stdout");
  };
  CLI::App* report = app.add_subcommand("report", "evaluate every theorem on a degree window");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites and print a pass/fail table");
  CLI::App* oracle = app.add_subcommand("oracle", "print raw oracle values");
  for (CLI::App* sub : {report, verify, oracle}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::validation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen == report ? Command::report : chosen == verify ? Command::verify : Command::oracle;
  if (chosen->count("--p")) cfg.p = p;
  if (chosen->count("--k")) cfg.k = k;
  if (chosen->count("--matrix")) cfg.matrix_file = matrix;
  if (chosen->count("--output")) cfg.output = output;
  cfg.format = format == "json" ? Format::json : Format::text;
  if (chosen->count("--degrees")) {
    cfg.degree_window = parse_degree_window(degrees);
    if (!cfg.degree_window) {
      err << "error: --degrees expects lo:hi with lo <= hi, got '" << degrees << "'\n";
      return exit_code::validation;
    }
  }
  switch (cfg.command) {
    case Command::report: return run_report(cfg, out, err);
    case Command::verify: return run_verify(cfg, out, err);
    case Command::oracle: return run_oracle(cfg, out, err);
  }
  return exit_code::internal;
}

}  // namespace crystalk
