// Copyright 2026 The pvqa Authors.

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pvqa/cli.hpp"
#include "pvqa/json_io.hpp"
#include "pvqa/mesh.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

using namespace pvqa;
namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "pvqa");
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string &name)
        : path(fs::temp_directory_path() / ("pvqa_cli_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    [[nodiscard]] std::string operator/(const std::string &f) const {
        return (path / f).string();
    }
};

std::string slurp(const std::string &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string &s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

void write_matrix(const std::string &file, const CMatrix &m) {
    io::write_json_file(file, io::matrix_to_json(m));
}

} // namespace

TEST(Cli, Factor35) {
    TempDir d("f35");
    auto r = run({"factor", "35", "--reps", "117", "--exact", "--seed", "7", "--out",
                  d / "o"});
    EXPECT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("35 = 5 x 7"), std::string::npos) << r.out;
    EXPECT_TRUE(fs::exists(d / "o/summary.json"));
    EXPECT_TRUE(fs::exists(d / "o/landscape_a.csv"));

    // Existing outputs need --force.
    auto again = run({"factor", "35", "--exact", "--out", d / "o"});
    EXPECT_EQ(again.code, cli::kUsage);
    auto forced = run({"factor", "35", "--exact", "--reps", "3", "--out", d / "o", "--force"});
    EXPECT_EQ(forced.code, cli::kOk) << forced.err;
}

TEST(Cli, Factor9) {
    TempDir d("f9");
    auto r = run({"factor", "9", "--exact", "--out", d / "o"});
    EXPECT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("9 = 3 x 3"), std::string::npos) << r.out;
}

TEST(Cli, Factor143) {
    TempDir d("f143");
    auto r = run({"factor", "143", "--reps", "50", "--exact", "--out", d / "o"});
    EXPECT_EQ(r.code, cli::kOk) << r.err;
    bool ok = r.out.find("143 = 11 x 13") != std::string::npos ||
              r.out.find("143 = 13 x 11") != std::string::npos;
    EXPECT_TRUE(ok) << r.out;
}

TEST(Cli, FactorUsageErrors) {
    TempDir d("usage");
    EXPECT_EQ(run({"factor", "34", "--exact", "--out", d / "a"}).code, cli::kUsage);
    EXPECT_EQ(run({"factor", "7", "--exact", "--out", d / "b"}).code, cli::kUsage);
    EXPECT_EQ(run({"factor", "35", "--exact", "--shots", "100", "--out", d / "c"}).code,
              cli::kUsage);
    EXPECT_EQ(run({"factor", "35", "--bogus"}).code, cli::kUsage);
    EXPECT_EQ(run({"factor", "35", "--exact", "--h", "0", "--out", d / "e"}).code,
              cli::kUsage);
    EXPECT_EQ(run({"factor", "35", "--exact", "--poisson", "--out", d / "f"}).code,
              cli::kUsage);
    EXPECT_EQ(run({}).code, cli::kUsage);
    EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST(Cli, FactorShotsAndPoisson) {
    TempDir d("shots");
    auto r = run({"factor", "35", "--reps", "4", "--shots", "2000", "--poisson",
                  "--max-iters", "40", "--out", d / "o"});
    EXPECT_TRUE(r.code == cli::kOk || r.code == cli::kNoFactorization) << r.err;
    EXPECT_TRUE(fs::exists(d / "o/convergence.csv"));
}

TEST(Cli, SeedIsReproducible) {
    TempDir d("seed");
    for (const char *o : {"a", "b"})
        ASSERT_EQ(run({"factor", "35", "--reps", "6", "--seed", "11", "--shots", "500",
                       "--max-iters", "50", "--out", d / o})
                      .code == cli::kUsage,
                  false);
    EXPECT_EQ(slurp(d / "a/convergence.csv"), slurp(d / "b/convergence.csv"));
    EXPECT_EQ(slurp(d / "a/summary.json"), slurp(d / "b/summary.json"));
}

TEST(Cli, ConfigFileAndPrecedence) {
    TempDir d("config");
    {
        std::ofstream cfg(d / "cfg.json");
        cfg << R"({"repetitions": 3, "exact": true, "seed": 5, "max_iters": 7})";
    }
    auto r = run({"factor", "35", "--config", d / "cfg.json", "--out", d / "o"});
    EXPECT_NE(r.code, cli::kUsage) << r.err;
    EXPECT_NE(r.out.find("runs: 3, seed 5"), std::string::npos) << r.out;

    auto flag = run({"factor", "35", "--config", d / "cfg.json", "--reps", "2",
                     "--seed", "9", "--out", d / "p"});
    EXPECT_NE(flag.out.find("runs: 2, seed 9"), std::string::npos) << flag.out;

    setenv("VQA_SEED", "21", 1);
    auto env = run({"factor", "35", "--reps", "2", "--exact", "--out", d / "q"});
    auto env_flag = run({"factor", "35", "--reps", "2", "--exact", "--seed", "4",
                         "--out", d / "s"});
    unsetenv("VQA_SEED");
    EXPECT_NE(env.out.find("seed 21"), std::string::npos) << env.out;
    EXPECT_NE(env_flag.out.find("seed 4"), std::string::npos) << env_flag.out;

    {
        std::ofstream bad(d / "bad.json");
        bad << R"({"repetitions": 3, "colour": "blue"})";
    }
    EXPECT_EQ(run({"factor", "35", "--config", d / "bad.json", "--out", d / "t"}).code,
              cli::kUsage);
}

TEST(Cli, Landscape) {
    auto a = run({"landscape", "--family", "a", "--n", "35"});
    ASSERT_EQ(a.code, cli::kOk) << a.err;
    EXPECT_EQ(count_lines(a.out), 1u + 101u * 101u);
    std::istringstream in(a.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "alpha,phi,energy");
    while (std::getline(in, line))
        EXPECT_EQ(std::stod(line.substr(line.rfind(',') + 1)), 0.0) << line;

    auto b = run({"landscape", "--family", "b", "--n", "35", "--grid", "11"});
    ASSERT_EQ(b.code, cli::kOk);
    EXPECT_EQ(count_lines(b.out), 122u);
    std::istringstream bin(b.out);
    std::getline(bin, line);
    while (std::getline(bin, line)) {
        double beta = std::stod(line.substr(0, line.find(',')));
        double e = std::stod(line.substr(line.rfind(',') + 1));
        EXPECT_NEAR(e, 100 * beta, 1e-12);
    }

    TempDir d("land");
    auto c = run({"landscape", "--family", "c", "--grid", "5", "--out", d / "c.csv"});
    ASSERT_EQ(c.code, cli::kOk);
    EXPECT_EQ(count_lines(slurp(d / "c.csv")), 26u);

    EXPECT_EQ(run({"landscape", "--family", "z"}).code, cli::kUsage);
    EXPECT_EQ(run({"landscape"}).code, cli::kUsage);
    EXPECT_EQ(run({"landscape", "--family", "a", "--n", "143"}).code, cli::kUsage);
}

TEST(Cli, DecomposeIdentity) {
    TempDir d("dec_id");
    write_matrix(d / "id.json", CMatrix::identity(4));
    auto r = run({"decompose", "--in", d / "id.json", "--out", d / "p.json"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto j = io::read_json_file(d / "p.json");
    EXPECT_NEAR(j["fidelity"].get<double>(), 1.0, 1e-12);
    EXPECT_EQ(j["theta"].size(), 6u);
    EXPECT_NE(r.out.find("round-trip fidelity"), std::string::npos);
}

TEST(Cli, DecomposeMeshMatrix) {
    TempDir d("dec_mesh");
    auto layout = mesh::MeshLayout::rectangular(4);
    write_matrix(d / "u.json",
                 mesh::compose_mesh(layout, mesh::random_phases(layout, 31)).matrix());
    auto r = run({"decompose", "--in", d / "u.json"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto j = nlohmann::json::parse(r.out.substr(0, r.out.rfind("round-trip")));
    EXPECT_GE(j["fidelity"].get<double>(), 1 - 1e-9);
}

TEST(Cli, DecomposeErrors) {
    TempDir d("dec_err");
    CMatrix bad = CMatrix::identity(3);
    bad(0, 0) = 2.0;
    write_matrix(d / "bad.json", bad);
    auto r = run({"decompose", "--in", d / "bad.json"});
    EXPECT_EQ(r.code, cli::kNonUnitary);
    EXPECT_FALSE(r.err.empty());

    {
        std::ofstream junk(d / "junk.json");
        junk << "{ not json";
    }
    EXPECT_EQ(run({"decompose", "--in", d / "junk.json"}).code, cli::kUsage);
    {
        std::ofstream shape(d / "shape.json");
        shape << R"({"m": 2, "re": [[1, 0]], "im": [[0, 0]]})";
    }
    EXPECT_EQ(run({"decompose", "--in", d / "shape.json"}).code, cli::kUsage);
    EXPECT_EQ(run({"decompose", "--in", d / "missing.json"}).code, cli::kUsage);
}

TEST(Cli, Hamiltonian) {
    auto r = run({"hamiltonian", "35"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["energies"], nlohmann::json({100, 0, 0, 196}));
    EXPECT_EQ(j["shift"], 74.0);
    auto g = run({"hamiltonian", "35", "--general"});
    ASSERT_EQ(g.code, cli::kOk);
    EXPECT_EQ(nlohmann::json::parse(g.out)["energies"].size(), 8u);
    EXPECT_EQ(run({"hamiltonian", "36"}).code, cli::kUsage);
}
