#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "adgraph/cache.hpp"
#include "adgraph/graph_spec.hpp"
#include "adgraph/report.hpp"

using namespace adg;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("adg-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Report, CensusCsvRoundTrip) {
    const AdGraph r = make_rigid(make_field(5));
    const R3Census c = r3_census(r);
    const std::string text = census_csv(c);
    EXPECT_EQ(text.substr(0, text.find('\n')), "side,A,B,r3");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 51);
    const R3Census back = census_from_csv(text, 5);
    ASSERT_EQ(back.entries.size(), c.entries.size());
    for (std::size_t i = 0; i < c.entries.size(); ++i) EXPECT_EQ(back.entries[i].r3, c.entries[i].r3);
    EXPECT_EQ(back.argmax, c.argmax);
    EXPECT_EQ(back.second, c.second);
    EXPECT_EQ(census_csv(back), text);
}

TEST(Report, CensusCsvRejectsDamage) {
    const std::string text = census_csv(r3_census(make_rigid(make_field(3))));
    EXPECT_THROW(census_from_csv(text, 5), std::runtime_error);
    EXPECT_THROW(census_from_csv("side,A,B\n", 3), std::runtime_error);
    std::string cut = text.substr(0, text.rfind('\n', text.size() - 2) + 1);
    EXPECT_THROW(census_from_csv(cut, 3), std::runtime_error);
}

TEST(Report, Json) {
    const AdGraph r = make_rigid(make_field(7));
    const auto p = profile_json(r, bfs_profile(r, r.vertex_id_of(VertexRef::line(Elem{0}, Elem{1}, Elem{0})), 3));
    EXPECT_EQ(p["origin"], "[0,1,0]");
    EXPECT_EQ(p["levels"], nlohmann::json({7, 42, 202}));
    const auto a = aut_json(aut_group(r));
    EXPECT_EQ(a["order"], "7");
    EXPECT_EQ(a["translation_only"], true);
    const auto s = census_summary_json(r3_census(r));
    EXPECT_EQ(s["max"]["r3"], 202);
    EXPECT_EQ(s["classes"], 98);
}

TEST(Cache, Sha256KnownAnswer) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cache, RoundTripAndMiss) {
    const fs::path dir = fresh_dir("roundtrip");
    ResultCache cache(dir);
    int computed = 0;
    auto work = [&] {
        ++computed;
        return std::string("payload\n");
    };
    EXPECT_EQ(cache.get_or_compute("R", 7, "census", work), "payload\n");
    EXPECT_EQ(cache.get_or_compute("R", 7, "census", work), "payload\n");
    EXPECT_EQ(computed, 1);
    EXPECT_TRUE(fs::exists(dir / "manifest.json"));
    cache.get_or_compute("R", 9, "census", work);
    cache.get_or_compute("GQ", 7, "census", work);
    EXPECT_EQ(computed, 3);
    EXPECT_NE(ResultCache::key("R", 7, "census"), ResultCache::key("R", 7, "aut"));
    fs::remove_all(dir);
}

TEST(Cache, CorruptEntryIsRecomputed) {
    const fs::path dir = fresh_dir("corrupt");
    std::ostringstream warn;
    ResultCache cache(dir, &warn);
    int computed = 0;
    auto work = [&] { return std::to_string(++computed); };
    cache.get_or_compute("R", 5, "census", work);
    const fs::path entry = dir / (ResultCache::key("R", 5, "census") + ".entry");
    std::ofstream(entry, std::ios::app) << "junk";
    EXPECT_EQ(cache.get_or_compute("R", 5, "census", work), "2");
    EXPECT_NE(warn.str().find("corrupt"), std::string::npos);
    EXPECT_EQ(cache.get_or_compute("R", 5, "census", work), "2");
    fs::remove_all(dir);
}

TEST(Cache, DisabledCacheAlwaysComputes) {
    ResultCache cache("");
    EXPECT_FALSE(cache.enabled());
    int computed = 0;
    auto work = [&] { return std::to_string(++computed); };
    cache.get_or_compute("R", 5, "census", work);
    cache.get_or_compute("R", 5, "census", work);
    EXPECT_EQ(computed, 2);
}
