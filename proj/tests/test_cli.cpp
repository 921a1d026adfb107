// End-to-end tests for the command-line tool.  Each case writes a config
// file into the scratch directory, runs the real binary through the shell,
// and checks exit codes, console output, and the artifacts left on disk.

#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

fs::path cli_root() {
  fs::path dir = fs::path(BISOLITON_TEST_DIR) / "cli";
  fs::create_directories(dir);
  return dir;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  REQUIRE(out.good());
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

size_t count_prefix_lines(const std::string& text, const std::string& prefix) {
  size_t n = 0, pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    if (text.compare(pos, prefix.size(), prefix) == 0) ++n;
    pos = end + 1;
  }
  return n;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the CLI through the shell.  `env_prefix` may hold VAR=value
// assignments that apply to the child process only.
RunResult run_cli(const std::string& args, const std::string& tag,
                  const std::string& env_prefix = "") {
  const fs::path dir = cli_root();
  const fs::path out = dir / (tag + ".stdout");
  const fs::path err = dir / (tag + ".stderr");
  std::string cmd = env_prefix.empty() ? std::string() : env_prefix + " ";
  cmd += q(BISOLITON_CLI_PATH) + " " + args + " >" + q(out) + " 2>" + q(err);
  const int rc = std::system(cmd.c_str());
  RunResult res;
  if (rc != -1 && WIFEXITED(rc)) res.exit_code = WEXITSTATUS(rc);
  res.out = slurp(out);
  res.err = slurp(err);
  return res;
}

// Two-column metric CSV (header skipped) as name -> raw value text.  The
// value keeps everything after the first comma.
std::map<std::string, std::string> metric_map(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE_MESSAGE(in.good(), "cannot open report " << p.string());
  std::map<std::string, std::string> m;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const size_t comma = line.find(',');
    if (comma == std::string::npos) continue;
    m[line.substr(0, comma)] = line.substr(comma + 1);
  }
  return m;
}

double metric_num(const std::map<std::string, std::string>& m,
                  const std::string& key) {
  auto it = m.find(key);
  REQUIRE_MESSAGE(it != m.end(), "missing report row '" << key << "'");
  return std::strtod(it->second.c_str(), nullptr);
}

struct InvariantLine {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  int pass = -1;
};

std::vector<InvariantLine> read_invariants(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE_MESSAGE(in.good(), "cannot open report " << p.string());
  std::string line;
  std::getline(in, line);
  CHECK(line == "invariant,value,threshold,pass");
  std::vector<InvariantLine> rows;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    InvariantLine row;
    std::string field;
    std::getline(ss, row.name, ',');
    std::getline(ss, field, ',');
    row.value = std::strtod(field.c_str(), nullptr);
    std::getline(ss, field, ',');
    row.threshold = std::strtod(field.c_str(), nullptr);
    std::getline(ss, field, ',');
    row.pass = std::atoi(field.c_str());
    rows.push_back(row);
  }
  return rows;
}

bool same_bytes(const fs::path& a, const fs::path& b) {
  return slurp(a) == slurp(b);
}

const char* kDiagonalStripKeys =
    "c1 = \"t - t^3/3\"\n"
    "c2 = \"0\"\n"
    "c3 = \"t^2\"\n"
    "n1 = \"-2*t/(1 + t^2)\"\n"
    "n2 = \"0\"\n"
    "n3 = \"(1 - t^2)/(1 + t^2)\"\n"
    "t_min = -0.8\n"
    "t_max = 0.8\n"
    "samples = 41\n"
    "nr = 9\n"
    "ns = 9\n";

}  // namespace

TEST_CASE("cli surface command meshes a closed-form pair deterministically") {
  const fs::path root = cli_root();
  const fs::path cfg = root / "surface.cfg";
  write_text(cfg,
             "# identity generating pair over a central window\n"
             "[surface]\n"
             "F = \"r\"\n"
             "G = \"s\"\n"
             "r_min = -0.5\n"
             "r_max = 0.5\n"
             "s_min = -0.5\n"
             "s_max = 0.5\n"
             "nr = 9\n"
             "ns = 9\n");

  const fs::path out_a = root / "surface_a";
  const RunResult a =
      run_cli("surface --config " + q(cfg) + " --out " + q(out_a), "surface_a");
  CAPTURE(a.err);
  CHECK(a.exit_code == 0);
  CHECK(a.err.empty());
  CHECK(contains(a.out, "surface: 9x9 grid"));
  CHECK(contains(a.out, "; PASS"));

  const std::string obj = slurp(out_a / "surface.obj");
  CHECK(first_line(obj) == "# bisoliton mesh 9x9");
  CHECK(count_prefix_lines(obj, "v ") == 81);
  CHECK(count_prefix_lines(obj, "vn ") == 81);
  CHECK(count_prefix_lines(obj, "f ") == 64);

  const std::string rep = slurp(out_a / "surface_report.csv");
  CHECK(first_line(rep) ==
        "r,s,x1,x2,x3,n1,n2,n3,regular,abs_rs,H,conf_aa,conf_sum,conf_ab");
  CHECK(count_prefix_lines(rep, "") == 82);

  const fs::path out_b = root / "surface_b";
  const RunResult b =
      run_cli("surface --config " + q(cfg) + " --out " + q(out_b), "surface_b");
  CHECK(b.exit_code == 0);
  CHECK(same_bytes(out_a / "surface.obj", out_b / "surface.obj"));
  CHECK(same_bytes(out_a / "surface_report.csv", out_b / "surface_report.csv"));
}

TEST_CASE("cli verify command passes clean and the corrupted control fails") {
  const fs::path root = cli_root();
  const fs::path cfg = root / "verify.cfg";
  write_text(cfg,
             "[verify]\n"
             "F = \"r\"\n"
             "G = \"s\"\n"
             "r_min = -0.4\n"
             "r_max = 0.4\n"
             "s_min = -0.4\n"
             "s_max = 0.4\n"
             "nr = 9\n"
             "ns = 9\n"
             "random_points = 8\n");

  const fs::path out_a = root / "verify_a";
  const RunResult a = run_cli(
      "verify --config " + q(cfg) + " --out " + q(out_a) + " --seed 777",
      "verify_a");
  CAPTURE(a.err);
  CHECK(a.exit_code == 0);
  CHECK(contains(a.out, "verify: 15/15 invariants passed ("));
  CHECK(!contains(a.out, "FAIL"));

  const std::vector<InvariantLine> rows = read_invariants(out_a / "verify_report.csv");
  REQUIRE(rows.size() == 15);
  const char* expected[] = {
      "mean_curvature_max",   "conformal_aa_max",     "conformal_sum_max",
      "conformal_ab_max",     "null_r_max",           "null_s_max",
      "nhat_unit_max",        "nhat_third_max",       "normal_match_max",
      "normal_roundtrip_max", "wave_residual_max",    "pde_residual_max",
      "pde_hyperbolicity_min", "pde_roundtrip_max",   "pde_inversion_failures"};
  for (size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(rows[i].name);
    CHECK(rows[i].name == expected[i]);
    CHECK(rows[i].pass == 1);
  }

  // Same config and seed, fresh directory: the report must be byte-identical.
  const fs::path out_b = root / "verify_b";
  const RunResult b = run_cli(
      "verify --config " + q(cfg) + " --out " + q(out_b) + " --seed 777",
      "verify_b");
  CHECK(b.exit_code == 0);
  CHECK(same_bytes(out_a / "verify_report.csv", out_b / "verify_report.csv"));

  // Negative control: corrupting the reference normal must be detected.
  const fs::path out_c = root / "verify_corrupt";
  const RunResult c = run_cli(
      "verify --config " + q(cfg) + " --out " + q(out_c) + " --seed 777",
      "verify_corrupt", "BISOLITON_CORRUPT_NORMAL=1");
  CHECK(c.exit_code == 1);
  CHECK(contains(c.out, " FAIL"));
  bool unit_row_failed = false;
  for (const InvariantLine& row : read_invariants(out_c / "verify_report.csv"))
    if (row.name == "nhat_unit_max") unit_row_failed = row.pass == 0;
  CHECK(unit_row_failed);
}

TEST_CASE("cli bjorling command reconstructs strip data and honors --perturb") {
  const fs::path root = cli_root();
  const fs::path cfg = root / "bjorling.cfg";
  write_text(cfg, std::string("[bjorling]\n") + kDiagonalStripKeys);

  const fs::path out_a = root / "bjorling_a";
  const RunResult a =
      run_cli("bjorling --config " + q(cfg) + " --out " + q(out_a), "bjorling_a");
  CAPTURE(a.err);
  CHECK(a.exit_code == 0);
  CHECK(contains(a.out, "bjorling: curve residual"));
  CHECK(contains(a.out, "; PASS"));

  const auto rep = metric_map(out_a / "bjorling_report.csv");
  CHECK(metric_num(rep, "strip_samples") == 41);
  CHECK(metric_num(rep, "flipped") == 1);
  CHECK(metric_num(rep, "curve_sup") < 1e-5);
  CHECK(metric_num(rep, "normal_sup") < 1e-5);
  CHECK(metric_num(rep, "passed") == 1);
  CHECK(rep.count("bump_amp") == 0);

  const std::string tables = slurp(out_a / "fg_tables.csv");
  CHECK(first_line(tables) == "r,Fprime,F,s,Gprime,G");
  CHECK(count_prefix_lines(tables, "") == 42);
  CHECK(first_line(slurp(out_a / "bjorling.obj")) == "# bisoliton mesh 9x9");

  // Bump outside the data window: both solutions solve the problem, agree on
  // the data window, and differ visibly across the bump line.
  const fs::path out_p = root / "bjorling_perturbed";
  const RunResult p = run_cli("bjorling --config " + q(cfg) + " --out " + q(out_p) +
                                  " --perturb J=1.0,1.5 amp=0.05",
                              "bjorling_p");
  CAPTURE(p.err);
  CHECK(p.exit_code == 0);
  CHECK(contains(p.out, "perturbed agreement"));
  CHECK(contains(p.out, "; PASS"));

  const auto prep = metric_map(out_p / "bjorling_report.csv");
  CHECK(metric_num(prep, "bump_lo") == 1.0);
  CHECK(metric_num(prep, "bump_hi") == 1.5);
  CHECK(metric_num(prep, "bump_amp_requested") == 0.05);
  CHECK(metric_num(prep, "bump_amp") == 0.05);
  CHECK(metric_num(prep, "curve_sup_perturbed") < 1e-5);
  CHECK(metric_num(prep, "normal_sup_perturbed") < 1e-5);
  CHECK(metric_num(prep, "omega_sup_diff") < 1e-6);
  CHECK(metric_num(prep, "bumpline_r") == 1.25);
  CHECK(metric_num(prep, "bumpline_sup_diff") > 1e-3);
  CHECK(metric_num(prep, "bumpline_sup_diff") < 0.1);
  CHECK(metric_num(prep, "passed") == 1);
  CHECK(fs::exists(out_p / "bjorling_perturbed.obj"));

  // Same run again: every artifact must be byte-identical.
  const fs::path out_q = root / "bjorling_perturbed_again";
  const RunResult rq = run_cli("bjorling --config " + q(cfg) + " --out " + q(out_q) +
                                   " --perturb J=1.0,1.5 amp=0.05",
                               "bjorling_q");
  CHECK(rq.exit_code == 0);
  CHECK(same_bytes(out_p / "bjorling_report.csv", out_q / "bjorling_report.csv"));
  CHECK(same_bytes(out_p / "fg_tables.csv", out_q / "fg_tables.csv"));
  CHECK(same_bytes(out_p / "bjorling.obj", out_q / "bjorling.obj"));
  CHECK(same_bytes(out_p / "bjorling_perturbed.obj",
                   out_q / "bjorling_perturbed.obj"));

  // The config-file form of the same bump produces the same report.
  const fs::path cfg2 = root / "bjorling_bump.cfg";
  write_text(cfg2, std::string("[bjorling]\n") + kDiagonalStripKeys +
                       "perturb = true\n"
                       "bump_lo = 1.0\n"
                       "bump_hi = 1.5\n"
                       "bump_amp = 0.05\n");
  const fs::path out_r = root / "bjorling_cfg_bump";
  const RunResult rr =
      run_cli("bjorling --config " + q(cfg2) + " --out " + q(out_r), "bjorling_r");
  CHECK(rr.exit_code == 0);
  CHECK(same_bytes(out_p / "bjorling_report.csv", out_r / "bjorling_report.csv"));

  // Malformed --perturb token forms are config errors.
  const RunResult e1 = run_cli("bjorling --config " + q(cfg) + " --out " +
                                   q(root / "bjorling_e1") + " --perturb Q=3",
                               "bjorling_e1");
  CHECK(e1.exit_code == 2);
  CHECK(contains(e1.err, "config error:"));
  CHECK(contains(e1.err, "--perturb expects tokens"));

  const RunResult e2 = run_cli("bjorling --config " + q(cfg) + " --out " +
                                   q(root / "bjorling_e2") + " --perturb J=1.0",
                               "bjorling_e2");
  CHECK(e2.exit_code == 2);
  CHECK(contains(e2.err, "J expects J=<lo>,<hi>"));

  const RunResult e3 = run_cli("bjorling --config " + q(cfg) + " --out " +
                                   q(root / "bjorling_e3") +
                                   " --perturb J=2.0,1.0 amp=0.05",
                               "bjorling_e3");
  CHECK(e3.exit_code == 2);
  CHECK(contains(e3.err, "lo < hi"));
}

TEST_CASE("cli bjorling command reports runtime failures with status names") {
  const fs::path root = cli_root();

  // Strip whose normal is unit and orthogonal but has a vanishing third
  // component: rejected after validation, before reconstruction.
  const fs::path strip_csv = root / "flat_normal_strip.csv";
  write_text(strip_csv,
             "t,c1,c2,c3,n1,n2,n3\n"
             "0,0,0,0,1,0,0\n"
             "0.25,0,0,0.25,1,0,0\n"
             "0.5,0,0,0.5,1,0,0\n"
             "0.75,0,0,0.75,1,0,0\n"
             "1,0,0,1,1,0,0\n");
  const fs::path cfg = root / "bjorling_flat.cfg";
  write_text(cfg, "[bjorling]\nstrip = \"" + strip_csv.string() + "\"\n");
  const RunResult a = run_cli(
      "bjorling --config " + q(cfg) + " --out " + q(root / "bjorling_flat"),
      "bjorling_flat");
  CHECK(a.exit_code == 3);
  CHECK(contains(a.err, "error: NormalThirdComponentZero"));
  CHECK(contains(a.err, "third component"));

  // Missing strip file surfaces as an IO error.
  const fs::path cfg2 = root / "bjorling_nofile.cfg";
  write_text(cfg2,
             "[bjorling]\nstrip = \"" + (root / "no_such_strip.csv").string() +
                 "\"\n");
  const RunResult b = run_cli(
      "bjorling --config " + q(cfg2) + " --out " + q(root / "bjorling_nofile"),
      "bjorling_nofile");
  CHECK(b.exit_code == 3);
  CHECK(contains(b.err, "error: IoError"));
  CHECK(contains(b.err, "cannot open"));
}

TEST_CASE("cli bjorling-tms command solves plane data and reports injectivity") {
  const fs::path root = cli_root();
  const fs::path cfg = root / "tms.cfg";
  write_text(cfg,
             "[bjorling-tms]\n"
             "c1 = \"0\"\n"
             "c2 = \"0\"\n"
             "c3 = \"t\"\n"
             "n1 = \"0\"\n"
             "n2 = \"1\"\n"
             "n3 = \"0\"\n"
             "t_min = -0.7\n"
             "t_max = 0.7\n"
             "nt = 9\n"
             "ns = 9\n"
             "gn_nt = 5\n"
             "gn_ns = 5\n");

  const fs::path out_a = root / "tms_a";
  const RunResult a =
      run_cli("bjorling-tms --config " + q(cfg) + " --out " + q(out_a), "tms_a");
  CAPTURE(a.err);
  CHECK(a.exit_code == 0);
  CHECK(contains(a.out, "bjorling-tms: curve residual"));
  CHECK(contains(a.out, "; PASS"));

  const auto rep = metric_map(out_a / "tms_report.csv");
  CHECK(metric_num(rep, "data_axis") == 0);
  CHECK(metric_num(rep, "bridge") == 0);
  CHECK(metric_num(rep, "curve_residual_max") < 1e-8);
  CHECK(metric_num(rep, "wave_residual_max") < 1e-8);
  CHECK(metric_num(rep, "conformal_sum_max") < 1e-9);
  CHECK(metric_num(rep, "conformal_cross_max") < 1e-9);

  // The plane maps (t, s) to (s, 0, t): components 1 and 3 give an
  // antidiagonal Jacobian, so both sign criteria fail while the determinant
  // never vanishes; that is exactly the ambiguous zero-diagonal reading.
  CHECK(metric_num(rep, "gn_comp_a") == 1);
  CHECK(metric_num(rep, "gn_comp_b") == 3);
  CHECK(metric_num(rep, "gn_criterion_i") == 0);
  CHECK(metric_num(rep, "gn_criterion_ii") == 0);
  CHECK(metric_num(rep, "gn_zero_diag_ambiguity") == 1);
  CHECK(metric_num(rep, "gn_min_abs_j11") == 0.0);
  CHECK(metric_num(rep, "gn_min_abs_det") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(contains(rep.at("gn_note"), "not a proof"));
  CHECK(metric_num(rep, "passed") == 1);
  CHECK(contains(a.out, "injectivity (i) fails, (ii) fails on samples"));

  const std::string samples = slurp(out_a / "gn_samples.csv");
  CHECK(first_line(samples) == "t,s,j11,j12,j21,j22,det");
  CHECK(count_prefix_lines(samples, "") == 26);
  CHECK(first_line(slurp(out_a / "tms.obj")) == "# bisoliton mesh 9x9");

  const fs::path out_b = root / "tms_b";
  const RunResult b =
      run_cli("bjorling-tms --config " + q(cfg) + " --out " + q(out_b), "tms_b");
  CHECK(b.exit_code == 0);
  CHECK(same_bytes(out_a / "tms_report.csv", out_b / "tms_report.csv"));
  CHECK(same_bytes(out_a / "gn_samples.csv", out_b / "gn_samples.csv"));
  CHECK(same_bytes(out_a / "tms.obj", out_b / "tms.obj"));

  // Requiring injectivity turns the ambiguous plane run into a failure.
  const fs::path cfg_req = root / "tms_require.cfg";
  write_text(cfg_req, slurp(cfg) + "require_injectivity = true\n");
  const RunResult c = run_cli(
      "bjorling-tms --config " + q(cfg_req) + " --out " + q(root / "tms_require"),
      "tms_require");
  CHECK(c.exit_code == 1);
  CHECK(contains(c.out, "; FAIL"));

  // Lightlike data curve: rejected by the solver, reported with its status.
  const fs::path cfg_ll = root / "tms_lightlike.cfg";
  write_text(cfg_ll,
             "[bjorling-tms]\n"
             "c1 = \"t\"\n"
             "c2 = \"0\"\n"
             "c3 = \"t\"\n"
             "n1 = \"0\"\n"
             "n2 = \"1\"\n"
             "n3 = \"0\"\n"
             "t_min = -0.5\n"
             "t_max = 0.5\n");
  const RunResult d = run_cli(
      "bjorling-tms --config " + q(cfg_ll) + " --out " + q(root / "tms_lightlike"),
      "tms_lightlike");
  CHECK(d.exit_code == 3);
  CHECK(contains(d.err, "error: MixedCausalCharacter"));
  CHECK(contains(d.err, "lightlike"));
}

TEST_CASE("cli config problems exit with code 2 and a located message") {
  const fs::path root = cli_root();
  const fs::path out = root / "cfg_errors";

  const RunResult missing = run_cli(
      "surface --config " + q(root / "no_such.cfg") + " --out " + q(out),
      "cfg_missing");
  CHECK(missing.exit_code == 2);
  CHECK(contains(missing.err, "config error:"));
  CHECK(contains(missing.err, "cannot open config file"));

  const fs::path wrong_section = root / "wrong_section.cfg";
  write_text(wrong_section, "[surface]\nF = \"r\"\n");
  const RunResult ws = run_cli(
      "verify --config " + q(wrong_section) + " --out " + q(out), "cfg_section");
  CHECK(ws.exit_code == 2);
  CHECK(contains(ws.err, "missing section [verify]"));

  const fs::path missing_key = root / "missing_key.cfg";
  write_text(missing_key, "[surface]\nG = \"s\"\n");
  const RunResult mk = run_cli(
      "surface --config " + q(missing_key) + " --out " + q(out), "cfg_key");
  CHECK(mk.exit_code == 2);
  CHECK(contains(mk.err, "missing required key 'F'"));

  const fs::path bad_number = root / "bad_number.cfg";
  write_text(bad_number,
             "[surface]\n"
             "F = \"r\"\n"
             "G = \"s\"\n"
             "r_min = oops\n"
             "r_max = 0.5\n"
             "s_min = -0.5\n"
             "s_max = 0.5\n");
  const RunResult bn = run_cli(
      "surface --config " + q(bad_number) + " --out " + q(out), "cfg_number");
  CHECK(bn.exit_code == 2);
  CHECK(contains(bn.err, "expected a number for 'r_min', got 'oops'"));
  CHECK(contains(bn.err, bad_number.string() + ":4"));

  const fs::path no_equals = root / "no_equals.cfg";
  write_text(no_equals, "[surface]\nthis line is broken\n");
  const RunResult ne = run_cli(
      "surface --config " + q(no_equals) + " --out " + q(out), "cfg_equals");
  CHECK(ne.exit_code == 2);
  CHECK(contains(ne.err, ":2: expected key = value"));

  const fs::path unterminated = root / "unterminated.cfg";
  write_text(unterminated, "[surface\nF = \"r\"\n");
  const RunResult un = run_cli(
      "surface --config " + q(unterminated) + " --out " + q(out), "cfg_header");
  CHECK(un.exit_code == 2);
  CHECK(contains(un.err, ":1: unterminated section header"));

  const fs::path stray_key = root / "stray_key.cfg";
  write_text(stray_key, "F = \"r\"\n");
  const RunResult sk = run_cli(
      "surface --config " + q(stray_key) + " --out " + q(out), "cfg_stray");
  CHECK(sk.exit_code == 2);
  CHECK(contains(sk.err, ":1: key outside any section"));

  const fs::path degenerate = root / "degenerate.cfg";
  write_text(degenerate,
             "[surface]\n"
             "F = \"r\"\n"
             "G = \"s\"\n"
             "r_min = 0.5\n"
             "r_max = -0.5\n"
             "s_min = -0.5\n"
             "s_max = 0.5\n");
  const RunResult dg = run_cli(
      "surface --config " + q(degenerate) + " --out " + q(out), "cfg_rect");
  CHECK(dg.exit_code == 2);
  CHECK(contains(dg.err, "degenerate parameter rectangle"));

  const fs::path bad_integer = root / "bad_integer.cfg";
  write_text(bad_integer,
             "[surface]\n"
             "F = \"r\"\n"
             "G = \"s\"\n"
             "r_min = -0.5\n"
             "r_max = 0.5\n"
             "s_min = -0.5\n"
             "s_max = 0.5\n"
             "nr = 8.5\n");
  const RunResult bi = run_cli(
      "surface --config " + q(bad_integer) + " --out " + q(out), "cfg_integer");
  CHECK(bi.exit_code == 2);
  CHECK(contains(bi.err, "expected an integer for 'nr'"));

  const fs::path bad_flag = root / "bad_flag.cfg";
  write_text(bad_flag,
             "[bjorling-tms]\n"
             "t_min = -1\n"
             "t_max = 1\n"
             "bridge = maybe\n");
  const RunResult bf = run_cli(
      "bjorling-tms --config " + q(bad_flag) + " --out " + q(out), "cfg_flag");
  CHECK(bf.exit_code == 2);
  CHECK(contains(bf.err, "expected true/false for 'bridge'"));
}
