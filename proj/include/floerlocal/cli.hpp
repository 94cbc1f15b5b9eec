#pragma once

/**
 * @file cli.hpp
 * @brief The floerlocal command-line front end.
 *
 * Exit status: 0 on success, 1 when an assertion fails (non-unique deduction,
 * constraint violations, disagreeing Ch methods), 2 on input errors.
 */

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "floerlocal/complex.hpp"
#include "floerlocal/deduce.hpp"
#include "floerlocal/error.hpp"
#include "floerlocal/filtered.hpp"
#include "floerlocal/hat.hpp"
#include "floerlocal/localequiv.hpp"
#include "floerlocal/mazur.hpp"
#include "floerlocal/obstructions.hpp"
#include "floerlocal/standard.hpp"

namespace floerlocal {

inline constexpr const char* kToolVersion = "0.1.0";

inline const std::vector<std::string>& cli_verbs() {
  static const std::vector<std::string> verbs = {"validate", "reduce",     "tensor",      "hat",    "ch",
                                                 "std",      "phi",        "loceq",       "stdrep", "obstruct",
                                                 "mazur-table", "mazur-check", "deduce", "pipeline", "phimatrix"};
  return verbs;
}

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace detail {

struct CliArgs {
  std::vector<std::string> files;
  std::string params;
  std::string rules_file;
  std::string output;
  std::string method = "basis";
  int j = 0;
  int n = 0;
  int N = 0;
  int max_len = -1;
  int max_abs = -1;
  int extra_gens = 2;
  int exp_bound = -1;
  int jobs = 1;
  int tau = 0;
  int epsilon = 1;
  bool porcelain = false;
  bool rules = false;
  bool exact = false;
  bool full = false;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Report {
 public:
  Report(int argc, const char* const* argv) {
    os_ << "# floerlocal " << kToolVersion << "\n# command:";
    for (int i = 1; i < argc; ++i) os_ << " " << argv[i];
    os_ << "\n";
  }
  void bounds(const std::string& text) { os_ << "# bounds: " << text << "\n"; }
  void input(const std::string& name, std::string_view data) {
    os_ << "# input: " << name << " fnv1a64=" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(data)
        << std::dec << std::setfill(' ') << "\n";
  }
  std::ostream& body() { return os_; }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

// A complex file may hold a bigraded complex (ring line) or a filtered one.
inline bool looks_filtered(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head.front() == '#') continue;
    return head == "fgen" || head == "farr";
  }
  return false;
}

inline FilteredComplex filtered_input(const std::string& text) {
  if (looks_filtered(text)) return parse_filtered(text);
  return hat_of(reduce(parse_complex(text)));
}

inline std::string params_arg(const CliArgs& a) {
  if (!a.params.empty()) return a.params;
  if (!a.files.empty()) return a.files.front();
  throw ParseError("missing parameter list");
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using detail::CliArgs;
  if (argc >= 2) {
    const std::string verb = argv[1];
    bool known = verb.rfind('-', 0) == 0;
    for (const auto& v : cli_verbs()) known = known || v == verb;
    if (!known) {
      err << "error: unknown verb '" << verb << "'\navailable verbs:";
      for (const auto& v : cli_verbs()) err << " " << v;
      err << "\n";
      return 2;
    }
  }

  CLI::App app{"Exact knot Floer local-equivalence engine over F2[U,V]/(UV)", "floerlocal"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  CliArgs a;

  auto common = [&](CLI::App* s) {
    s->add_flag("--porcelain", a.porcelain, "Emit only machine-readable lines");
    s->add_option("-o,--output", a.output, "Write the report to a file");
    s->add_option("--jobs", a.jobs, "Worker threads (0 = all cores)");
  };
  auto files = [&](CLI::App* s, const std::string& what, int count) {
    s->add_option("files", a.files, what)->required()->expected(count);
  };
  auto params = [&](CLI::App* s) {
    s->add_option("entries", a.files, "Comma-separated entries, e.g. 1,-2,2,-1")->expected(0, 1);
    s->add_option("-p,--params", a.params, "Comma-separated entries");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check d^2 = 0, homogeneity and names");
  files(validate_cmd, "complex file", 1);
  auto* reduce_cmd = app.add_subcommand("reduce", "Cancel unit entries");
  files(reduce_cmd, "complex file", 1);
  auto* tensor_cmd = app.add_subcommand("tensor", "Tensor product of two complexes");
  files(tensor_cmd, "two complex files", 2);
  auto* hat_cmd = app.add_subcommand("hat", "Hat flavor of a reduced R-complex");
  files(hat_cmd, "complex file", 1);
  auto* ch_cmd = app.add_subcommand("ch", "Characteristic multi-set");
  files(ch_cmd, "complex or filtered file", 1);
  ch_cmd->add_option("--method", a.method, "basis, definition or both")
      ->check(CLI::IsMember({"basis", "definition", "both"}));
  auto* std_cmd = app.add_subcommand("std", "Build a standard complex");
  params(std_cmd);
  auto* phi_cmd = app.add_subcommand("phi", "phi_j of standard parameters");
  params(phi_cmd);
  phi_cmd->add_option("--j", a.j, "Index j >= 1 (default: all nonzero)");
  auto* loceq_cmd = app.add_subcommand("loceq", "Decide local equivalence of two complexes");
  files(loceq_cmd, "two complex files", 2);
  auto* stdrep_cmd = app.add_subcommand("stdrep", "Standard representative by bounded search");
  files(stdrep_cmd, "complex file", 1);
  stdrep_cmd->add_option("--max-len", a.max_len, "Longest parameter list (default 8)");
  stdrep_cmd->add_option("--max-abs", a.max_abs, "Largest |entry| (default 3)");
  auto* obstruct_cmd = app.add_subcommand("obstruct", "Realizability pattern and lifting search for a prefix");
  params(obstruct_cmd);
  obstruct_cmd->add_option("--extra-gens", a.extra_gens, "Auxiliary generators (0..2)");
  obstruct_cmd->add_option("--exp-bound", a.exp_bound, "Exponent bound (default 2 max|entry| + 2)");
  obstruct_cmd->add_flag("--full", a.full, "Skip the prefix-only subsystem and search exhaustively");
  auto* table_cmd = app.add_subcommand("mazur-table", "Grading table or constraint set of the satellite complex");
  table_cmd->add_option("--n", a.n, "Parameter n >= 2")->required();
  table_cmd->add_flag("--rules", a.rules, "Print the arrow constraints instead of the table");
  auto* check_cmd = app.add_subcommand("mazur-check", "Audit a complex against arrow constraints");
  files(check_cmd, "complex or filtered file", 1);
  check_cmd->add_option("--n", a.n, "Use the constraints for parameter n");
  check_cmd->add_option("--rules", a.rules_file, "Constraint file");
  check_cmd->add_flag("--exact", a.exact, "Read 'exactly' clauses as exact counts");
  auto* deduce_cmd = app.add_subcommand("deduce", "Candidate local classes under arrow constraints");
  deduce_cmd->add_option("--n", a.n, "Parameter n >= 2")->required();
  deduce_cmd->add_option("--rules", a.rules_file, "Constraint file (default: constraints for n)");
  deduce_cmd->add_option("--tau", a.tau, "tau (default n + 1)");
  deduce_cmd->add_option("--epsilon", a.epsilon, "epsilon (default 1)");
  deduce_cmd->add_option("--max-len", a.max_len, "Longest parameter list (default 8)");
  deduce_cmd->add_option("--max-abs", a.max_abs, "Largest |entry| (default n + 2)");
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Local classes of iterated satellites");
  pipeline_cmd->add_option("--N", a.N, "Number of satellite steps")->required();
  pipeline_cmd->add_option("--max-len", a.max_len, "Longest parameter list (default 8)");
  auto* phim_cmd = app.add_subcommand("phimatrix", "phi_j matrix of the pipeline classes");
  phim_cmd->add_option("--N", a.N, "Matrix size")->required();

  for (auto* s : app.get_subcommands({})) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string verb = cmd->get_name();
  detail::Report rep(argc, argv);
  std::ostream& os = rep.body();
  int status = 0;

  auto load_complex = [&](const std::string& path) {
    const std::string text = detail::read_file(path);
    rep.input(path, text);
    return parse_complex(text);
  };
  auto load_filtered = [&](const std::string& path) {
    const std::string text = detail::read_file(path);
    rep.input(path, text);
    return detail::filtered_input(text);
  };
  auto load_params = [&]() {
    const std::string text = detail::params_arg(a);
    rep.input("params", text);
    return text;
  };
  auto load_rules = [&](int n) {
    if (!a.rules_file.empty()) {
      const std::string text = detail::read_file(a.rules_file);
      rep.input(a.rules_file, text);
      return parse_constraints(text);
    }
    if (n < 2) throw std::invalid_argument("either --n >= 2 or --rules is required");
    return satellite_arrow_constraints(n);
  };

  try {
    if (verb == "validate") {
      const auto c = load_complex(a.files[0]);
      const auto report = validate(c);
      if (report.ok()) {
        os << "valid generators=" << c.size() << "\n";
      } else {
        os << "invalid violations=" << report.violations.size() << "\n";
        for (const auto& v : report.violations)
          os << "violation " << to_string(v.kind) << " " << v.from << " " << v.to << " " << v.detail << "\n";
        status = 2;
      }
    } else if (verb == "reduce") {
      const auto c = load_complex(a.files[0]);
      const auto r = reduce(c);
      if (!a.porcelain) os << "# generators " << c.size() << " -> " << r.size() << "\n";
      os << format_complex(r);
    } else if (verb == "tensor") {
      const auto c1 = load_complex(a.files[0]);
      const auto c2 = load_complex(a.files[1]);
      os << format_complex(tensor(c1, c2));
    } else if (verb == "hat") {
      os << format_filtered(hat_of(load_complex(a.files[0])));
    } else if (verb == "ch") {
      const auto f = load_filtered(a.files[0]);
      rep.bounds("method=" + a.method);
      CharMultiset ch;
      if (a.method == "basis") {
        ch = ch_from_basis(f);
      } else if (a.method == "definition") {
        ch = ch_from_definition(f);
      } else {
        ch = ch_from_basis(f);
        if (!(ch == ch_from_definition(f))) throw AssertionFailure("ch: basis and definition methods disagree");
        if (!a.porcelain) os << "# basis and definition methods agree\n";
      }
      os << format_ch(ch);
    } else if (verb == "std") {
      const auto p = parse_params(load_params());
      const auto sc = build_standard(p);
      const auto te = tau_epsilon_of(p);
      os << "# params " << to_display(p) << " tau=" << te.tau << " epsilon=" << te.epsilon << "\n";
      os << format_complex(sc.complex);
    } else if (verb == "phi") {
      const auto p = parse_params(load_params());
      if (a.j != 0) {
        os << "phi_" << a.j << " = " << phi(p, a.j) << "\n";
      } else {
        int top = 0;
        for (int b : p.entries()) top = std::max(top, std::abs(b));
        for (int j = 1; j <= top; ++j) os << "phi_" << j << " = " << phi(p, j) << "\n";
      }
    } else if (verb == "loceq") {
      const auto c1 = reduce(load_complex(a.files[0]));
      const auto c2 = reduce(load_complex(a.files[1]));
      const auto f = find_local_map(c1, c2);
      const auto g = find_local_map(c2, c1);
      os << "locally_equivalent=" << (f && g ? "true" : "false") << "\n";
      if (!a.porcelain) {
        os << "# local map first -> second: " << (f ? "found" : "none") << "\n";
        if (f) os << format_map(*f, c1, c2);
        os << "# local map second -> first: " << (g ? "found" : "none") << "\n";
        if (g) os << format_map(*g, c2, c1);
      }
    } else if (verb == "stdrep") {
      const int max_len = a.max_len < 0 ? 8 : a.max_len;
      const int max_abs = a.max_abs < 0 ? 3 : a.max_abs;
      rep.bounds("max-len=" + std::to_string(max_len) + " max-abs=" + std::to_string(max_abs));
      const auto r = standard_representative(load_complex(a.files[0]), max_len, max_abs);
      if (r) {
        os << "standard_representative=" << to_display(*r) << "\n";
      } else {
        os << "standard_representative=none bounds=" << max_len << "," << max_abs << "\n";
      }
    } else if (verb == "obstruct") {
      const auto prefix = parse_int_list(load_params());
      int top = 0;
      for (int b : prefix) top = std::max(top, std::abs(b));
      LiftOptions opt;
      opt.extra_gens = a.extra_gens;
      opt.exp_bound = a.exp_bound < 0 ? 2 * top + 2 : a.exp_bound;
      opt.use_core = !a.full;
      opt.jobs = a.jobs;
      rep.bounds("extra-gens=" + std::to_string(opt.extra_gens) + " exp-bound=" + std::to_string(opt.exp_bound));
      const auto r = lifting_oracle(prefix, opt);
      os << format_obstruction_line(prefix, opt, r) << "\n";
      if (!a.porcelain) {
        if (auto rule = matching_obstruction(prefix)) os << "# pattern " << rule->pattern << "\n";
        os << "# search core_refuted=" << (r.refuted_by_core ? "true" : "false")
           << " configurations=" << r.configurations << " nodes=" << r.nodes << "\n";
        if (r.witness) {
          os << "# witness over F2[U,V]:\n";
          std::istringstream ws(format_complex(*r.witness));
          for (std::string line; std::getline(ws, line);) os << "#   " << line << "\n";
        }
      }
    } else if (verb == "mazur-table") {
      if (a.rules) {
        os << format_constraints(satellite_arrow_constraints(a.n));
      } else {
        const auto pts = build_gradings(a.n);
        if (!a.porcelain) os << "# points " << pts.size() << "\n";
        os << format_table(pts);
      }
    } else if (verb == "mazur-check") {
      const auto f = load_filtered(a.files[0]);
      const auto cs = load_rules(a.n);
      rep.bounds(std::string("count-mode=") + (a.exact ? "exact" : "at-most"));
      const auto vs = check_against(f, cs, a.exact ? CountMode::Exact : CountMode::AtMost);
      for (const auto& v : vs) os << format_violation(v) << "\n";
      os << "violations=" << vs.size() << "\n";
      if (!vs.empty()) status = 1;
    } else if (verb == "deduce") {
      if (a.n < 2 && a.rules_file.empty()) throw std::invalid_argument("deduce: --n must be at least 2");
      DeductionInput inp;
      inp.cs = load_rules(a.n);
      inp.tau = deduce_cmd->count("--tau") ? a.tau : a.n + 1;
      inp.epsilon = a.epsilon;
      inp.max_len = a.max_len < 0 ? 8 : a.max_len;
      inp.max_abs = a.max_abs < 0 ? a.n + 2 : a.max_abs;
      rep.bounds("max-len=" + std::to_string(inp.max_len) + " max-abs=" + std::to_string(inp.max_abs));
      os << "# axiom: tau(M(K)) = " << inp.tau << ", epsilon(M(K)) = " << inp.epsilon
         << " (Levine's tau/epsilon formula for Mazur satellites)\n";
      const auto c = candidates(inp, a.jobs);
      os << "deduce n=" << a.n << " survivors=" << format_params_list(c) << " tau=" << inp.tau
         << " epsilon=" << inp.epsilon << "\n";
    } else if (verb == "pipeline") {
      PipelineOptions opt;
      if (a.max_len >= 0) opt.max_len = a.max_len;
      opt.jobs = a.jobs;
      rep.bounds("base=" + std::to_string(opt.base_max_len) + "," + std::to_string(opt.base_max_abs) +
                 " max-len=" + std::to_string(opt.max_len) + " max-abs=n+" + std::to_string(opt.extra_abs));
      os << "# axiom: tau(M(K)) = n+1, epsilon(M(K)) = 1 at the step with parameter n "
            "(Levine's tau/epsilon formula for Mazur satellites)\n";
      const auto res = pipeline(a.N, opt);
      for (const auto& s : res.steps) os << format_step(s) << "\n";
    } else if (verb == "phimatrix") {
      PipelineOptions opt;
      opt.jobs = a.jobs;
      os << format_phi_matrix(phi_matrix(a.N, opt));
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const AssertionFailure& e) {
    err << "assertion failed: " << e.what() << "\n";
    err << rep.str();
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (!a.output.empty()) {
    std::ofstream f(a.output);
    if (!f) {
      err << "error: cannot write '" << a.output << "'\n";
      return 2;
    }
    f << rep.str();
  } else {
    out << rep.str();
  }
  return status;
}

}  // namespace floerlocal
