#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rdil/cli.hpp"
#include "rdil/generators.hpp"
#include "rdil/io.hpp"

using namespace rdil;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static std::atomic<int> counter{0};
        path = fs::temp_directory_path() / ("rdil-test-" + std::to_string(counter.fetch_add(1)));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (out_text) *out_text = out.str() + err.str();
    return code;
}

}  // namespace

TEST_CASE("json round trips") {
    TempDir tmp;
    Rng rng(127);

    SUBCASE("product system with twists") {
        const ProductSystem sys = random_two_generator_system(rng, 2, 3);
        save_system(sys, tmp.file("sys.json"));
        const ProductSystem back = load_system(tmp.file("sys.json"));
        CHECK(back.k() == sys.k());
        CHECK(back.dims() == sys.dims());
        CHECK(spectral_norm(back.twist(2, 1) - sys.twist(2, 1)) < 1e-15);
    }

    SUBCASE("absent twist defaults to the shuffle") {
        write_json_file(nlohmann::json{{"k", 2}, {"dims", {2, 2}}}, tmp.file("plain.json"));
        const ProductSystem sys = load_system(tmp.file("plain.json"));
        CHECK(spectral_norm(sys.twist(2, 1) - ProductSystem::shuffle(2, 2)) == 0.0);
    }

    SUBCASE("representation") {
        const Representation rep = tensor_doubly_commuting(rng, 2, {2, 1}, {2, 2});
        save_system(rep.system(), tmp.file("sys.json"));
        save_representation(rep, tmp.file("rep.json"));
        const Representation back =
            load_representation(tmp.file("rep.json"), load_system(tmp.file("sys.json")));
        CHECK(back.hdim() == rep.hdim());
        for (int i = 1; i <= 2; ++i)
            for (int l = 1; l <= rep.system().dim(i); ++l)
                CHECK(spectral_norm(back.block(i, l) - rep.block(i, l)) < 1e-15);
    }

    SUBCASE("polynomial") {
        NcPolynomial p;
        p.terms.push_back({Complex(1.5, -0.5), {{1, 1}, {2, 2}}});
        p.terms.push_back({Complex(0.0, 1.0), {}});
        write_json_file(polynomial_to_json(p), tmp.file("poly.json"));
        const NcPolynomial back = load_polynomial(tmp.file("poly.json"));
        REQUIRE(back.terms.size() == 2);
        CHECK(back.terms[0].coef == p.terms[0].coef);
        CHECK(back.terms[0].word == p.terms[0].word);
    }

    SUBCASE("malformed input throws") {
        std::ofstream bad(tmp.file("bad.json"));
        bad << "{ \"k\": 2, ";
        bad.close();
        CHECK_THROWS_AS(load_system(tmp.file("bad.json")), InputError);
        write_json_file(nlohmann::json{{"k", 2}, {"dims", {2}}}, tmp.file("short.json"));
        CHECK_THROWS_AS(load_system(tmp.file("short.json")), InputError);
    }

    SUBCASE("block shapes inconsistent with the system are rejected") {
        const Representation good = scalar_tuple({Complex(0.5, 0.0), Complex(0.3, 0.0)});
        nlohmann::json j = representation_to_json(good);
        j["h"] = 2;  // 1x1 blocks no longer match
        write_json_file(j, tmp.file("shape.json"));
        CHECK_THROWS_AS(
            load_representation(tmp.file("shape.json"), ProductSystem::untwisted({1, 1})),
            DimensionError);

        nlohmann::json lists = representation_to_json(good);
        lists["blocks"].erase(1);  // one block list for a two-generator system
        write_json_file(lists, tmp.file("lists.json"));
        CHECK_THROWS_AS(
            load_representation(tmp.file("lists.json"), ProductSystem::untwisted({1, 1})),
            InputError);
    }
}

namespace {

struct CliFixture {
    TempDir tmp;
    std::string zero_sys, zero_rep;       // untwisted pair, zero blocks
    std::string anti_sys, pair_rep;       // lambda = -1 with commuting pair
    std::string nil_sys, nil_rep;         // nilpotent 0.9 triple
    std::string scalar_sys, scalar_rep;   // k = 1, t = 0.5
    std::string poly;

    CliFixture() {
        const Representation zero = Representation::zero(ProductSystem::untwisted({1, 1}), 2);
        zero_sys = tmp.file("zero_sys.json");
        zero_rep = tmp.file("zero_rep.json");
        save_system(zero.system(), zero_sys);
        save_representation(zero, zero_rep);

        const ProductSystem anti =
            ProductSystem::scalar({{{1, 0}, {-1, 0}}, {{-1, 0}, {1, 0}}});
        Matrix half(1, 1);
        half(0, 0) = 0.5;
        const Representation pair(anti, 1, {{half}, {half}});
        anti_sys = tmp.file("anti_sys.json");
        pair_rep = tmp.file("pair_rep.json");
        save_system(anti, anti_sys);
        save_representation(pair, pair_rep);

        const Representation nil = nilpotent_family({0.9, 0.9, 0.9});
        nil_sys = tmp.file("nil_sys.json");
        nil_rep = tmp.file("nil_rep.json");
        save_system(nil.system(), nil_sys);
        save_representation(nil, nil_rep);

        const Representation sc = scalar_tuple({Complex(0.5, 0.0)});
        scalar_sys = tmp.file("sc_sys.json");
        scalar_rep = tmp.file("sc_rep.json");
        save_system(sc.system(), scalar_sys);
        save_representation(sc, scalar_rep);

        NcPolynomial p;
        p.terms.push_back({Complex(1.0, 0.0), {{1, 1}}});
        poly = tmp.file("poly.json");
        write_json_file(polynomial_to_json(p), poly);
    }
};

}  // namespace

TEST_CASE("cli exit codes and reports") {
    CliFixture fx;

    SUBCASE("validate") {
        CHECK(run({"validate", "--system", fx.zero_sys, "--rep", fx.zero_rep}) == 0);
        std::string text;
        CHECK(run({"validate", "--system", fx.anti_sys, "--rep", fx.pair_rep}, &text) == 1);
        CHECK(text.find("INVALID") != std::string::npos);
    }

    SUBCASE("malformed input exits 2") {
        CliFixture local;
        std::ofstream bad(local.tmp.file("bad.json"));
        bad << "{ not json";
        bad.close();
        CHECK(run({"validate", "--system", local.tmp.file("bad.json"), "--rep", fx.zero_rep}) == 2);
        CHECK(run({"validate", "--system", fx.zero_sys}) == 2);  // missing --rep
    }

    SUBCASE("brehmer reports the negative eigenvalue") {
        std::string text;
        CHECK(run({"brehmer", "--system", fx.nil_sys, "--rep", fx.nil_rep}, &text) == 1);
        CHECK(text.find("-1.43") != std::string::npos);
        CHECK(run({"brehmer", "--system", fx.zero_sys, "--rep", fx.zero_rep}) == 0);
    }

    SUBCASE("dcheck") {
        CHECK(run({"dcheck", "--system", fx.zero_sys, "--rep", fx.zero_rep}) == 0);
        CHECK(run({"dcheck", "--system", fx.nil_sys, "--rep", fx.nil_rep}) == 1);
    }

    SUBCASE("comp-identities") {
        CHECK(run({"comp-identities", "--system", fx.nil_sys, "--rep", fx.nil_rep, "--box",
                   "1,1,1"}) == 0);
    }

    SUBCASE("dilate") {
        std::string text;
        CHECK(run({"dilate", "--system", fx.scalar_sys, "--rep", fx.scalar_rep, "--box", "4",
                   "--format", "json"},
                  &text) == 0);
        const auto report = nlohmann::json::parse(text);
        CHECK(report["kdim"].get<int>() == 5);
        CHECK(report["embed_isometry_residual"].get<double>() < 1e-10);

        CHECK(run({"dilate", "--system", fx.nil_sys, "--rep", fx.nil_rep, "--box", "1,1,1"}) == 1);
        CHECK(run({"dilate", "--system", fx.scalar_sys, "--rep", fx.scalar_rep, "--box", "4",
                   "--cap", "3"}) == 3);
    }

    SUBCASE("fock and vn") {
        CHECK(run({"fock", "--system", fx.anti_sys, "--box", "3,3"}) == 0);
        std::string text;
        CHECK(run({"vn", "--system", fx.scalar_sys, "--rep", fx.scalar_rep, "--poly", fx.poly,
                   "--format", "json"},
                  &text) == 0);
        const auto report = nlohmann::json::parse(text);
        CHECK(report["norm_T"].get<double>() == doctest::Approx(0.5));
        CHECK(report["monotone"].get<bool>());
    }

    SUBCASE("chars") {
        CliFixture local;
        const ProductSystem twisted =
            ProductSystem::scalar({{{1, 0}, {0, 1}}, {{0, -1}, {1, 0}}});
        const std::string sys_path = local.tmp.file("twisted.json");
        save_system(twisted, sys_path);
        CHECK(run({"chars", "--system", sys_path, "--point", "0.5,0", "--point", "0,0"}) == 0);
        CHECK(run({"chars", "--system", sys_path, "--point", "0.5,0", "--point", "0.5,0"}) == 1);
    }

    SUBCASE("search is deterministic and classifies the samples") {
        std::string first, second;
        CHECK(run({"search", "--trials", "40", "--seed", "7", "--format", "json"}, &first) == 0);
        CHECK(run({"search", "--trials", "40", "--seed", "7", "--format", "json"}, &second) == 0);
        CHECK(first == second);
        const auto report = nlohmann::json::parse(first);
        CHECK(report["theorem_violations"].empty());
        CHECK(report["valid"].get<int>() > 0);
        // The nilpotent slice of the sampler finds instances failing (D).
        CHECK(report["commuting_without_condition_d"].get<int>() > 0);

        CHECK(run({"search", "--trials", "0"}) == 2);
    }

    SUBCASE("help exits zero") {
        CHECK(run({"--help"}) == 0);
    }
}
