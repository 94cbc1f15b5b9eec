#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "floerlocal/cli.hpp"
#include "support.hpp"

using namespace floerlocal;
using fltest::S;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "floerlocal");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return std::string(FLOERLOCAL_DATA_DIR) + "/" + name; }

std::string scratch(const std::string& name, const std::string& contents) {
  const auto dir = std::filesystem::temp_directory_path() / ("floerlocal_cli_" + std::to_string(fltest::seed()));
  std::filesystem::create_directories(dir);
  const auto path = (dir / name).string();
  std::ofstream(path) << contents;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);)
    if (l == line) return true;
  return false;
}

/// Lines that are not comments.
std::string body(const std::string& text) {
  std::istringstream is(text);
  std::string out;
  for (std::string l; std::getline(is, l);)
    if (l.empty() || l.front() != '#') out += l + "\n";
  return out;
}

}  // namespace

TEST_CASE("phi verb", "[cli]") {
  const auto r = run({"phi", "1,-2,2,-1", "--j", "2"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "phi_2 = 1"));
  const auto all = run({"phi", "--params", "1,-3,3,-1", "--porcelain"});
  CHECK(body(all.out) == "phi_1 = 1\nphi_2 = 0\nphi_3 = 1\n");
}

TEST_CASE("pipeline verb", "[cli]") {
  const auto r = run({"pipeline", "--N", "3"});
  CHECK(r.code == 0);
  CHECK(body(r.out) ==
        "step n=0 survivors={(1,-1,1,-1)} tau=2 epsilon=1\n"
        "step n=1 survivors={(1,-2,2,-1)} tau=3 epsilon=1\n"
        "step n=2 survivors={(1,-3,3,-1)} tau=4 epsilon=1\n"
        "step n=3 survivors={(1,-4,4,-1)} tau=5 epsilon=1\n");
  CHECK(r.out.find("# axiom: tau(M(K)) = n+1") != std::string::npos);
}

TEST_CASE("validate verb", "[cli]") {
  const auto ok = run({"validate", data("trefoil.cplx")});
  CHECK(ok.code == 0);
  CHECK(has_line(ok.out, "valid generators=3"));

  const auto bad = run({"validate", data("broken.cplx")});
  CHECK(bad.code == 2);
  CHECK(bad.out.find("invalid violations=") != std::string::npos);
  CHECK(bad.out.find("\nviolation ") != std::string::npos);
}

TEST_CASE("Input errors", "[cli]") {
  const auto unknown = run({"frobnicate"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("available verbs:") != std::string::npos);
  CHECK(unknown.err.find("pipeline") != std::string::npos);

  const auto path = scratch("bad.cplx", "ring R\ngen x0 0 0\ndif x0 y U\n");
  const auto parse = run({"validate", path});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("line 3") != std::string::npos);

  CHECK(run({"validate", data("missing.cplx")}).code == 2);
  CHECK(run({"phi", "1,-2,2"}).code == 2);
  CHECK(run({"phi"}).code == 2);
  CHECK(run({"mazur-table"}).code == 2);
}

TEST_CASE("Report header and output file", "[cli]") {
  const auto out = scratch("report.txt", "");
  const auto r = run({"reduce", data("trefoil.cplx"), "-o", out});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const auto text = slurp(out);
  CHECK(text.rfind("# floerlocal 0.1.0\n", 0) == 0);
  CHECK(text.find("# command: reduce ") != std::string::npos);
  CHECK(text.find("# input: " + data("trefoil.cplx") + " fnv1a64=") != std::string::npos);
}

TEST_CASE("Emitted complexes parse back", "[cli]") {
  const auto reduced = run({"reduce", data("trefoil.cplx"), "--porcelain"});
  REQUIRE(reduced.code == 0);
  CHECK(parse_complex(reduced.out) == parse_complex(slurp(data("trefoil.cplx"))));

  const auto tens = run({"tensor", data("trefoil.cplx"), data("trefoil.cplx")});
  REQUIRE(tens.code == 0);
  const auto t = parse_complex(tens.out);
  CHECK(t.size() == 9);
  CHECK(validate(t).ok());

  const auto st = run({"std", "1,-2,2,-1"});
  REQUIRE(st.code == 0);
  CHECK(parse_complex(st.out) == S({1, -2, 2, -1}));
  CHECK(st.out.find("# params (1,-2,2,-1) tau=3 epsilon=1") != std::string::npos);

  const auto hat = run({"hat", data("trefoil.cplx")});
  REQUIRE(hat.code == 0);
  CHECK(parse_filtered(hat.out) == hat_of(S({1, -1})));
}

TEST_CASE("ch verb", "[cli]") {
  const auto r = run({"ch", data("trefoil.cplx"), "--method", "both"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# basis and definition methods agree") != std::string::npos);
  CHECK(body(r.out) == format_ch(ch_closed_form(StandardParams({1, -1}))));
  CHECK(run({"ch", data("trefoil.cplx"), "--method", "guess"}).code == 2);
}

TEST_CASE("loceq and stdrep verbs", "[cli]") {
  const auto tref = data("trefoil.cplx");
  const auto d2 = scratch("d2.cplx", format_complex(S({1, -1, 1, -1})));
  const auto tt = scratch("tt.cplx", format_complex(tensor(S({1, -1}), S({1, -1}))));

  CHECK(has_line(run({"loceq", tt, d2, "--porcelain"}).out, "locally_equivalent=true"));
  CHECK(has_line(run({"loceq", tref, d2}).out, "locally_equivalent=false"));

  CHECK(has_line(run({"stdrep", tt, "--max-len", "6", "--max-abs", "2"}).out, "standard_representative=(1,-1,1,-1)"));
  const auto big = scratch("big.cplx", format_complex(S({1, -3, 3, -1})));
  CHECK(has_line(run({"stdrep", big, "--max-len", "4", "--max-abs", "2"}).out,
                 "standard_representative=none bounds=4,2"));
}

TEST_CASE("obstruct verb", "[cli]") {
  const auto r = run({"obstruct", "1,-2,-1,-1", "--porcelain"});
  CHECK(r.code == 0);
  CHECK(body(r.out) == "obstruction (1,-2,-1,-1) predicate=true oracle=refuted bounds=2,6\n");
  const auto ok = run({"obstruct", "1,-1"});
  CHECK(ok.out.find("oracle=exists") != std::string::npos);
  CHECK(ok.out.find("# witness over F2[U,V]:") != std::string::npos);
}

TEST_CASE("mazur verbs", "[cli]") {
  const auto table = run({"mazur-table", "--n", "3", "--porcelain"});
  CHECK(table.code == 0);
  CHECK(body(table.out) == format_table(build_gradings(3)));

  const auto rules = run({"mazur-table", "--n", "3", "--rules", "--porcelain"});
  CHECK(parse_constraints(rules.out).rules == satellite_arrow_constraints(3).rules);

  const auto good = scratch("good.cplx", format_complex(S({1, -3, 3, -1})));
  const auto pass = run({"mazur-check", good, "--n", "3"});
  CHECK(pass.code == 0);
  CHECK(has_line(pass.out, "violations=0"));

  auto h = hat_of(S({1, -3, 3, -1}));
  FilteredComplex extra({{"e1", -7, -2}, {"e2", -8, -4}});
  extra.set_arrow(0, 1);
  const auto bad = scratch("bad.fcx", format_filtered(direct_sum(h, extra)));
  const auto rules_file = scratch("rules3.txt", rules.out);
  const auto fail = run({"mazur-check", bad, "--rules", rules_file});
  CHECK(fail.code == 1);
  CHECK(has_line(fail.out, "violations=1"));
  CHECK(fail.out.find("violation clause=1") != std::string::npos);
}

TEST_CASE("deduce and phimatrix verbs", "[cli]") {
  const auto d = run({"deduce", "--n", "3"});
  CHECK(d.code == 0);
  CHECK(has_line(d.out, "deduce n=3 survivors={(1,-3,3,-1)} tau=4 epsilon=1"));
  CHECK(d.out.find("Levine") != std::string::npos);

  const auto m = run({"phimatrix", "--N", "3", "--porcelain"});
  CHECK(m.code == 0);
  CHECK(body(m.out) == "1 0 0\n0 1 0\n0 0 1\nrank=3\n");
}
