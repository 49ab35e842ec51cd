#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string kfdl_bin() {
    const char* p = std::getenv("KFDL_BIN");
    return p ? p : "";
}

int run(const std::string& args) {
    std::string cmd = kfdl_bin() + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("cli reruns are byte-identical") {
    if (kfdl_bin().empty()) {
        MESSAGE("KFDL_BIN not set; skipping");
        return;
    }
    fs::path dir = fs::temp_directory_path() / "kfd_cli_test";
    fs::create_directories(dir);
    auto out1 = (dir / "a.csv").string();
    auto out2 = (dir / "b.csv").string();
    REQUIRE(run("delta --problem kfree --k 2 --from 10 --to 1000 --points 40 --out " +
                out1) == 0);
    REQUIRE(run("delta --problem kfree --k 2 --from 10 --to 1000 --points 40 --out " +
                out2) == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(slurp(out1).substr(0, 25) == "x,summatory,main,delta\n10");

    auto j1 = (dir / "c1.json").string();
    auto j2 = (dir / "c2.json").string();
    REQUIRE(run("constants --kind Bk --k 4 --method euler --P 5000 --out " + j1) == 0);
    REQUIRE(run("constants --kind Bk --k 4 --method euler --P 5000 --out " + j2) == 0);
    CHECK(slurp(j1) == slurp(j2));
    fs::remove_all(dir);
}

TEST_CASE("cli exit codes") {
    if (kfdl_bin().empty()) {
        MESSAGE("KFDL_BIN not set; skipping");
        return;
    }
    fs::path dir = fs::temp_directory_path() / "kfd_cli_codes";
    fs::create_directories(dir);
    CHECK(run("bogus-subcommand") == 2);
    CHECK(run("delta --problem nonsense --out " + (dir / "x.csv").string()) == 2);
    CHECK(run("spacing --D1 999999 --D2 999999 --N1 999999 --N2 999999 --k 2 "
              "--delta 1 --out " + (dir / "s.csv").string()) == 3);
    CHECK(run("meansquare --problem dirichlet --T 2e10 --out " +
              (dir / "m.json").string()) == 3);
    fs::remove_all(dir);
}

TEST_CASE("cli secondary modes") {
    if (kfdl_bin().empty()) {
        MESSAGE("KFDL_BIN not set; skipping");
        return;
    }
    fs::path dir = fs::temp_directory_path() / "kfd_cli_modes";
    fs::create_directories(dir);
    auto path = [&](const char* n) { return (dir / n).string(); };

    REQUIRE(run("voronoi --mode osc --x 1e4 --y 5 --z 100 --k 3 --out " +
                path("osc.csv")) == 0);
    CHECK(slurp(path("osc.csv")).rfind("x,y,z,k,signed,value\n", 0) == 0);

    REQUIRE(run("spacing --ek --y 4 --z 50 --k 2 --T 1e4 --out " + path("ek.csv")) ==
            0);
    CHECK(slurp(path("ek.csv")).rfind("y,z,k,T,value\n", 0) == 0);

    REQUIRE(run("sieve --mertens-to 1000 --mertens-c 0.2 --mertens-out " +
                path("m.csv")) == 0);
    CHECK(slurp(path("m.csv")).rfind("u,M,envelope\n2,0,2\n", 0) == 0);

    // cross-method run stays within the stated tail bounds (exit 0)
    REQUIRE(run("constants --kind d2 --method both --M 1000000 --out " +
                path("d2.json")) == 0);

    // double-precision main terms differ from double-double only in the tail
    REQUIRE(run("delta --problem dirichlet --from 100 --to 100 --points 1 "
                "--precision double --out " + path("dp.csv")) == 0);
    REQUIRE(run("delta --problem dirichlet --from 100 --to 100 --points 1 --out " +
                path("dd.csv")) == 0);
    CHECK(slurp(path("dp.csv")).substr(0, 30) == slurp(path("dd.csv")).substr(0, 30));
    fs::remove_all(dir);
}

TEST_CASE("cli config file precedence") {
    if (kfdl_bin().empty()) {
        MESSAGE("KFDL_BIN not set; skipping");
        return;
    }
    fs::path dir = fs::temp_directory_path() / "kfd_cli_cfg";
    fs::create_directories(dir);
    {
        std::ofstream cfg(dir / "cfg.json");
        cfg << "{\"T\": 512, \"problem\": \"dirichlet\"}\n";
    }
    auto out = (dir / "m.json").string();
    REQUIRE(run("meansquare --config " + (dir / "cfg.json").string() + " --out " +
                out) == 0);
    CHECK(slurp(out).find("\"T\": 512.0") != std::string::npos);
    // explicit flag beats the config file
    REQUIRE(run("meansquare --config " + (dir / "cfg.json").string() +
                " --T 256 --out " + out) == 0);
    CHECK(slurp(out).find("\"T\": 256.0") != std::string::npos);
    fs::remove_all(dir);
}
