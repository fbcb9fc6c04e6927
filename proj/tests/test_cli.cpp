#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome adg(const std::string& args) {
    const std::string cmd = std::string(ADG_BINARY) + " " + args + " 2>/dev/null";
    Outcome r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST(Cli, PermutationTest) {
    const Outcome r = adg("pp test --poly 'x^3' --q 7");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j, nlohmann::json({{"pp", false}, {"valueset", 3}}));
    EXPECT_EQ(nlohmann::json::parse(adg("pp test --poly 'x^5' --q 7").out)["pp"], true);
}

TEST(Cli, CensusCsv) {
    const Outcome r = adg("--format csv graph census --spec R --q 7");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 99);
    EXPECT_NE(r.out.find("line,0,1,202\n"), std::string::npos);
    EXPECT_NE(r.out.find("line,0,0,197\n"), std::string::npos);
}

TEST(Cli, VerifyExitCodes) {
    const Outcome ok = adg("verify prop3.1 --q 7");
    EXPECT_EQ(ok.code, 0);
    const auto j = nlohmann::json::parse(ok.out);
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j[0]["status"], "passed");
    EXPECT_EQ(adg("verify prop3.1 --q 8").code, 1);
    EXPECT_EQ(adg("verify nope --q 7").code, 2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(adg("graph stats --spec 'q=7;h=p1'").code, 2);
    EXPECT_EQ(adg("graph stats --spec R --q 8").code, 2);
    EXPECT_EQ(adg("graph stats").code, 2);
    EXPECT_EQ(adg("frobnicate").code, 2);
}

TEST(Cli, GraphQueries) {
    auto json_of = [](const std::string& args) { return nlohmann::json::parse(adg(args).out); };
    EXPECT_EQ(json_of("graph distance --spec R --q 7 --from '(0,1,0)' --to '(0,2,0)'")["distance"], 4);
    EXPECT_EQ(json_of("graph girth --spec GQ --q 5")["girth"], 8);
    EXPECT_EQ(json_of("graph profile --spec R --q 7 --vertex '[0,1,0]' --radius 3")["levels"],
              nlohmann::json({7, 42, 202}));
    EXPECT_EQ(json_of("aut order --spec R --q 7")["order"], "7");
    EXPECT_EQ(json_of("iso GQ 'q=7;f=p1*l1;g=p1^2*l1' --q 7")["isomorphic"], true);
}

TEST(Cli, OutputDoesNotDependOnWorkers) {
    const std::string args = "verify eq2.path,diam,wan --q 5,7";
    const Outcome a = adg("--workers 1 " + args);
    const Outcome b = adg("--workers 3 " + args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const Outcome s1 = adg("--seed 5 verify eq2.path --q 7");
    const Outcome s2 = adg("--seed 6 verify eq2.path --q 7");
    EXPECT_EQ(nlohmann::json::parse(s1.out)[0]["seed"], 5);
    EXPECT_NE(s1.out, s2.out);
}

TEST(Cli, CacheDirectory) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("adg-cli-cache-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    const std::string args = "--cache-dir " + dir.string() + " --format csv graph census --spec R --q 5";
    const Outcome first = adg(args);
    ASSERT_EQ(first.code, 0);
    EXPECT_TRUE(fs::exists(dir / "manifest.json"));
    const Outcome second = adg(args);
    EXPECT_EQ(first.out, second.out);
    fs::remove_all(dir);
}
