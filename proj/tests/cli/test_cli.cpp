// Runs the mixbound executable as a subprocess and checks exit codes and output.
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Workdir {
 public:
  Workdir() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("mixbound_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~Workdir() { fs::remove_all(dir_); }
  fs::path path(const std::string& name) const { return dir_ / name; }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }

 private:
  fs::path dir_;
};

RunResult run(const std::string& args) {
  static const Workdir scratch;
  const auto out = scratch.path("stdout");
  const auto err = scratch.path("stderr");
  const std::string cmd = std::string("'") + MIXBOUND_EXE + "' " + args + " > '" + out.string() +
                          "' 2> '" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  for (auto& l : lines(text)) {
    if (!l.empty() && l[0] != '#') out.push_back(l);
  }
  return out;
}

std::string without_timestamp(const std::string& text) {
  std::string out;
  for (auto& l : lines(text)) {
    if (l.rfind("# timestamp:", 0) != 0) out += l + '\n';
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    else if (c == ',' && !quoted) {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

// Value of `column` in the first data row.
double cell(const std::string& text, const std::string& column) {
  const auto rows = data_lines(text);
  REQUIRE(rows.size() >= 2);
  const auto header = split(rows[0]);
  const auto values = split(rows[1]);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) return std::stod(values.at(i));
  }
  FAIL("missing column " << column);
  return 0.0;
}

}  // namespace

TEST_CASE("analyze complete(4) reports the closed-form summary") {
  const auto r = run("analyze --family complete --sizes 4");
  REQUIRE(r.code == 0);
  CHECK(cell(r.out, "gap") == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(cell(r.out, "t_target") == doctest::Approx(2.25).epsilon(1e-14));
  CHECK(cell(r.out, "t_hit") == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("analyze from a spec file") {
  Workdir dir;
  const auto spec = dir.write("cycle4.spec", "# four-cycle\nfamily=cycle\nn=4\n");
  const auto r = run("analyze --spec '" + spec.string() + "'");
  REQUIRE(r.code == 0);
  CHECK(cell(r.out, "Q1") == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("output starts with the manifest header") {
  const auto r = run("analyze --family cycle --sizes 5");
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() >= 7);
  CHECK(ls[0].rfind("# mixbound ", 0) == 0);
  CHECK(ls[1].rfind("# command: ", 0) == 0);
  CHECK(ls[2].rfind("# spec_digest: ", 0) == 0);
  CHECK(ls[3] == "# master_seed: none");
  CHECK(ls[4].rfind("# timestamp: ", 0) == 0);
}

TEST_CASE("--out writes the same content as stdout") {
  Workdir dir;
  const auto path = dir.path("summary.csv");
  const auto to_file = run("analyze --family complete --sizes 4 --out '" + path.string() + "'");
  const auto to_stdout = run("analyze --family complete --sizes 4");
  REQUIRE(to_file.code == 0);
  CHECK(to_file.out.empty());
  CHECK(data_lines(slurp(path)) == data_lines(to_stdout.out));
}

TEST_CASE("invalid input exits 2 with a diagnostic") {
  Workdir dir;
  const auto bad = dir.write("bad.spec", "family=cycle\nn=banana\n");
  for (const std::string& args :
       {"analyze --spec '" + bad.string() + "'", std::string("analyze --family nosuch --sizes 3"),
        std::string("analyze"), std::string("verify --family cycle --sizes 8 --eps 0"),
        std::string("brw --family cycle --sizes 8 --target sideways"),
        std::string("frobnicate")}) {
    CAPTURE(args);
    const auto r = run(args);
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("non-reversible and reducible chains exit 3") {
  Workdir dir;
  const auto cyclic = dir.write("cyclic.spec",
                                "family=custom\nrow=0.5,0.5,0\nrow=0,0.5,0.5\nrow=0.5,0,0.5\n");
  const auto split_chain = dir.write("split.spec",
                                     "family=custom\nrow=0.5,0.5,0\nrow=0.5,0.5,0\nrow=0,0,1\n");
  for (const auto& path : {cyclic, split_chain}) {
    CAPTURE(path);
    const auto r = run("analyze --spec '" + path.string() + "'");
    CHECK(r.code == 3);
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("verify passes on the stated families and fails with a scaled rhs") {
  CHECK(run("verify --family complete --sizes 4,8,16 --ell 1,2").code == 0);
  CHECK(run("verify --family torus --d 2 --sizes 4,8,16 --ell 1,2,4").code == 0);
  const auto r = run("verify --family complete --sizes 4 --rhs-scale 0.5");
  CHECK(r.code == 1);
  CHECK(r.err.find("failed") != std::string::npos);
}

TEST_CASE("brw output is byte-identical on re-run apart from the timestamp") {
  const std::string args = "brw --family cycle --sizes 16,32 --target hit --replicates 2000 --seed 7";
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(without_timestamp(a.out) == without_timestamp(b.out));
  CHECK(a.out.find("# master_seed: 7") != std::string::npos);
}

TEST_CASE("brw intersect fills the band columns") {
  const auto r = run("brw --target intersect --family torus --d 2 --sizes 4,8 --replicates 500");
  REQUIRE(r.code == 0);
  CHECK(cell(r.out, "band_lo") > 0.0);
  CHECK(cell(r.out, "band_hi") > cell(r.out, "band_lo"));
}

TEST_CASE("brw exits 4 when every replicate is censored") {
  const auto r = run("brw --family cycle --sizes 128 --target hit --replicates 10 --seed 7 --max-time 1e-9");
  CHECK(r.code == 4);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("brw sandwich mode needs three sizes and passes on a calibrated fixture") {
  CHECK(run("brw --family cycle --sizes 16,32 --sandwich --replicates 100").code == 2);
  CHECK(run("brw --family complete --sizes 8,16,32 --target hit --sandwich --seed 7").code == 0);
}

TEST_CASE("profile and optcheck") {
  const auto p = run("profile --family cycle --sizes 8 --points 5");
  REQUIRE(p.code == 0);
  const auto rows = data_lines(p.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "kernel,t,d_inf,d2_max,tv_max,ave_l2");
  CHECK(cell(p.out, "t") == 0.0);

  CHECK(run("optcheck --lambda2 0.5 --lambdan 2 --ell 2 --t 4 --budget 3").code == 0);
  CHECK(run("optcheck --random 25 --seed 9").code == 0);
  CHECK(run("optcheck --lambda2 2 --lambdan 1").code == 2);
}

TEST_CASE("help and version exit 0") {
  CHECK(run("--help").code == 0);
  const auto v = run("--version");
  CHECK(v.code == 0);
  CHECK_FALSE(v.out.empty());
}
