#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "arithdyn/cli.hpp"
#include "arithdyn/errors.hpp"
#include "arithdyn/parse.hpp"
#include "arithdyn/serialize.hpp"
#include "oracles.hpp"

using namespace arithdyn;
namespace fs = std::filesystem;

namespace {

struct Result {
  int rc;
  std::string out, err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int rc = cli::run(args, out, err);
  return {rc, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("arithdyn_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(ParseMap, Examples) {
  MapDefinition a = parse_map("P1; X,Y; X^2+Y^2, Y^2");
  EXPECT_TRUE(a.projective);
  EXPECT_EQ(a.dim, 1u);
  EXPECT_EQ(a.map.degree(), 2);
  MapDefinition b = parse_map("A2; x,y; y+1, x*y+1");
  EXPECT_FALSE(b.projective);
  EXPECT_EQ(b.map.affine_components()[1], parse_polynomial("x*y + 1", {"x", "y"}));
  MapDefinition c = parse_map("label: rational\nPN:3; A,B,C,D; A^2/2, B^2, 3/4*C^2, D^2 # comment\n");
  EXPECT_EQ(c.dim, 3u);
  ASSERT_TRUE(c.label);
  EXPECT_EQ(*c.label, "rational");
  EXPECT_EQ(c.polys[0].coefficient(Monomial{2, 0, 0, 0}), Rational(1, 2));
}

TEST(ParseMap, ErrorsCarryPositions) {
  try {
    parse_map("P1; X,Y; X^2, X*Y + Z");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 21);
    EXPECT_NE(std::string(e.what()).find("'Z'"), std::string::npos);
  }
  try {
    parse_map("# header\nP1; X,Y;\n  X^2, Y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_map("P1; X,Y; X^^2, Y^2"), ParseError);
  EXPECT_THROW(parse_map("P1; X,Y; X^2, Y^2, X*Y"), ParseError);
  EXPECT_THROW(parse_map("Q2; X,Y; X^2, Y^2"), ParseError);
  EXPECT_THROW(parse_map("P1; X,Y; (X + Y^2, Y^2"), ParseError);
  EXPECT_THROW(parse_map("P1; X,Y; X/0, Y"), ParseError);
}

TEST(ParseMap, PrintRoundTrip) {
  for (const char* t :
       {"P1; X,Y; X^2+Y^2, Y^2", "A2; x,y; y+1, x*y+1", "A2; x,y; y, x^2 - x*y", "P1; X,Y; 3*X^2 - Y^2, X*Y + 2*Y^2",
        "P2; X,Y,Z; X^2 + Z^2, Y^2 + X*Z, Z^2", "label: frac\nA2; u,v; (u - 1/2)^2 + v, -u/3",
        "PN:3; A,B,C,D; A^2, B^2, C^2 - 7/5*A*D, (D - A)*(D + A)", "AN:1; t; t^3 - 2*t + 1/7"}) {
    MapDefinition a = parse_map(t);
    std::string printed = print_map(a);
    MapDefinition b = parse_map(printed);
    EXPECT_EQ(print_map(b), printed) << t;
    EXPECT_EQ(b.polys, a.polys) << t;
    EXPECT_EQ(b.label, a.label) << t;
  }
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  std::string fib = dir.write("fib.map", "A2; x,y; y+1, x*y+1\n");
  std::string bad = dir.write("bad.map", "P1; X,Y; X^2, X*Y + Z\n");
  std::string irr = dir.write("irr.map", "A2; x,y; 2*y^2, x^2 - y^2\n");
  EXPECT_EQ(invoke({"delta", "--map", fib, "--iters", "4"}).rc, cli::kOk);
  Result r = invoke({"delta", "--map", bad});
  EXPECT_EQ(r.rc, cli::kError);
  EXPECT_NE(r.err.find("1:21"), std::string::npos);
  EXPECT_EQ(invoke({"delta", "--map", dir.path("missing.map")}).rc, cli::kError);
  EXPECT_EQ(invoke({"no-such-command"}).rc, cli::kError);
  EXPECT_EQ(invoke({"quad", "--map", irr}).rc, cli::kInconclusive);
  EXPECT_EQ(invoke({"--help"}).rc, cli::kOk);
}

TEST(Cli, DeltaOnFibonacciMap) {
  TempDir dir;
  Result r = invoke({"delta", "--map", dir.write("fib.map", "A2; x,y; y+1, x*y+1\n"), "--iters", "12"});
  ASSERT_EQ(r.rc, 0) << r.err;
  std::string want = "[";
  auto fib = oracle::fibonacci_degrees(12);
  for (std::size_t i = 0; i < fib.size(); ++i) want += (i ? ", " : "") + std::to_string(fib[i]);
  want += "]";
  EXPECT_NE(r.out.find(want), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("upper bound"), std::string::npos);
}

TEST(Cli, CountMatchesBruteForce) {
  Result r = invoke({"count", "--dim", "1", "--bound", "60"});
  ASSERT_EQ(r.rc, 0) << r.err;
  std::regex row(R"(^\s*60\s+(\d+)\s)");
  std::smatch m;
  bool found = false;
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);)
    if (std::regex_search(line, m, row)) {
      found = true;
      EXPECT_EQ(std::stol(m[1]), oracle::brute_count(1, 60));
    }
  EXPECT_TRUE(found) << r.out;
}

TEST(Cli, CanhtAlphaStable) {
  TempDir dir;
  std::string sq = dir.write("sq.map", "P1; X,Y; X^2, Y^2\n");
  Result h = invoke({"canht", "--map", sq, "--point", "[2:1]", "--width", "1e-9"});
  ASSERT_EQ(h.rc, 0) << h.err;
  EXPECT_NE(h.out.find("0.693147"), std::string::npos) << h.out;
  EXPECT_EQ(invoke({"alpha", "--map", sq, "--point", "[2:1]", "--iters", "8"}).rc, 0);
  EXPECT_EQ(invoke({"stable", "--map", sq, "--iters", "4"}).rc, 0);
  EXPECT_EQ(invoke({"canht", "--map", dir.write("c.map", "P2; X,Y,Z; Y*Z, X*Z, X*Y\n"), "--point", "[1:1:1]"}).rc,
            cli::kError);
}

TEST(Cli, FamilyVerifyAndExtend) {
  TempDir dir;
  std::string sq = dir.write("sq.map", "P1; X,Y; X^2, Y^2\n");
  std::string f5 = dir.path("f5.json"), f6 = dir.path("f6.json");
  Result r = invoke({"family", "--map", sq, "--scheme", "height-ratio", "--size", "5", "--out", f5});
  ASSERT_EQ(r.rc, 0) << r.err;
  CertificateDocument doc = load_document(slurp(f5));
  EXPECT_EQ(doc.family.points.size(), 5u);
  EXPECT_EQ(doc.family.pairs.size(), 10u);
  EXPECT_EQ(invoke({"verify", "--in", f5}).rc, 0);

  std::string avoid = dir.write("avoid.txt", "X - 2*Y\nX - 3*Y\n");
  r = invoke({"family", "--map", sq, "--scheme", "height-ratio", "--size", "6", "--extend", f5, "--avoid", avoid, "--out",
           f6});
  ASSERT_EQ(r.rc, 0) << r.err;
  CertificateDocument d6 = load_document(slurp(f6));
  ASSERT_EQ(d6.family.points.size(), 6u);
  EXPECT_EQ(d6.family.pairs.size(), 15u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(d6.family.points[i], doc.family.points[i]);
  EXPECT_EQ(invoke({"verify", "--in", f6}).rc, 0);
}

TEST(Cli, TamperedPayloadIsRejected) {
  TempDir dir;
  std::string sq = dir.write("sq.map", "P1; X,Y; X^2, Y^2\n");
  std::string f = dir.path("f.json");
  ASSERT_EQ(invoke({"family", "--map", sq, "--scheme", "height-ratio", "--size", "3", "--out", f}).rc, 0);
  std::string text = slurp(f);
  // Alter the first digit of every quoted integer inside "pairs", one at a time.
  std::size_t start = text.find("\"pairs\"");
  ASSERT_NE(start, std::string::npos);
  std::size_t end = text.find("\"points\"", start);
  std::regex number("\"-?(\\d+)\"");
  int tried = 0;
  for (auto it = std::sregex_iterator(text.begin() + start, text.begin() + end, number); it != std::sregex_iterator();
       ++it) {
    std::size_t pos = start + it->position(1);
    std::string t = text;
    t[pos] = t[pos] == '9' ? '1' : static_cast<char>(t[pos] + 1);
    std::string path = dir.write("t.json", t);
    ASSERT_EQ(invoke({"verify", "--in", path}).rc, cli::kError) << "digit at " << pos << " in " << it->str();
    ++tried;
  }
  EXPECT_GT(tried, 5);
}

TEST(Cli, PrimeDegreeTamperedDegree) {
  TempDir dir;
  std::string sq = dir.write("sq.map", "P1; X,Y; X^2 + Y^2, Y^2\n");
  std::string f = dir.path("pd.json");
  ASSERT_EQ(invoke({"family", "--map", sq, "--scheme", "prime-degree", "--size", "2", "--out", f}).rc, 0);
  ASSERT_EQ(invoke({"verify", "--in", f}).rc, 0);
  std::string text = slurp(f);
  for (const std::string key : {"\"degree\": \"3\"", "\"x_degree\": \"3\""}) {
    std::size_t pos = text.find(key);
    ASSERT_NE(pos, std::string::npos) << key;
    std::string t = text;
    t[pos + key.size() - 2] = '7';
    ASSERT_EQ(invoke({"verify", "--in", dir.write("t.json", t)}).rc, cli::kError) << key;
  }
}

TEST(Cli, OutputIsDeterministic) {
  TempDir dir;
  std::string sq = dir.write("sq.map", "P1; X,Y; X^2 + Y^2, Y^2\n");
  std::string a = dir.path("a.json"), b = dir.path("b.json");
  ASSERT_EQ(invoke({"family", "--map", sq, "--size", "4", "--out", a}).rc, 0);
  ASSERT_EQ(invoke({"family", "--map", sq, "--size", "4", "--out", b}).rc, 0);
  std::string ta = slurp(a), tb = slurp(b);
  EXPECT_EQ(ta, tb);
  // Sorted keys: re-dumping the parsed document changes nothing.
  EXPECT_EQ(dump_document(load_document(ta)), ta);
  Json j = Json::parse(ta);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  // No JSON number carries exact data.
  std::function<void(const Json&)> walk = [&](const Json& v) {
    if (v.is_number_integer() || v.is_number_float()) ADD_FAILURE() << "numeric JSON value " << v.dump();
    if (v.is_structured())
      for (const auto& c : v) walk(c);
  };
  walk(j.at("family"));
  walk(j.at("subject"));
}

TEST(Cli, QuadAndElliptic) {
  TempDir dir;
  Result q = invoke({"quad", "--map", dir.write("q.map", "A2; x,y; x^2 + y, x\n"), "--prime", "2", "--point", "(1/2, 1)",
                  "--iters", "3"});
  ASSERT_EQ(q.rc, 0) << q.err;
  EXPECT_NE(q.out.find("1, 2, 4, 8"), std::string::npos) << q.out;

  std::string nf = dir.path("nf.json");
  Result f = invoke({"quad", "--normal-form", "1.1", "--params", "1, 1", "--prime", "2", "--size", "3", "--out", nf});
  ASSERT_EQ(f.rc, 0) << f.err;
  EXPECT_EQ(invoke({"verify", "--in", nf}).rc, 0);

  std::string curve = dir.write("e.curve", "E; 0, 2\n");
  Result d = invoke({"elliptic", "--curve", curve, "--point", "(-1, 1)", "--double"});
  ASSERT_EQ(d.rc, 0) << d.err;
  EXPECT_NE(d.out.find("17/4"), std::string::npos);
  EXPECT_NE(d.out.find("-71/8"), std::string::npos);
  Result t = invoke({"elliptic", "--curve", dir.write("e1.curve", "E; 0, 1\n"), "--point", "(2, 3)", "--torsion"});
  ASSERT_EQ(t.rc, 0) << t.err;
  EXPECT_NE(t.out.find("6"), std::string::npos);
  std::string ab = dir.path("ab.json");
  Result fam = invoke({"elliptic", "--curve", curve, "--point", "(-1, 1)", "--family", "--m", "2", "--size", "3", "--out", ab});
  ASSERT_EQ(fam.rc, 0) << fam.err;
  EXPECT_EQ(invoke({"verify", "--in", ab}).rc, 0);
  EXPECT_EQ(invoke({"elliptic", "--curve", curve, "--point", "(1, 1)", "--double"}).rc, cli::kError);
}
