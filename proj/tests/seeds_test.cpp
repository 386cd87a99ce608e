#include <doctest.h>

#include "okbc/io.hpp"
#include "okbc/seeds.hpp"
#include "test_util.hpp"

using namespace okbc;

namespace {
PhraseTable table_of(const std::vector<std::string>& surfaces, PhraseKind kind) {
    PhraseTable t;
    for (const auto& s : surfaces) t.intern(kind, s);
    return t;
}
} // namespace

TEST_CASE("dictionary seeds pair phrases sharing the argmax entity") {
    PhraseTable t = table_of({"trump", "donald trump", "yahoo", "google"}, PhraseKind::NP);
    MentionDictionary dict;
    dict.entries["trump"] = {{"E1", 0.9}};
    dict.entries["donald trump"] = {{"E1", 0.8}, {"E2", 0.2}};
    dict.entries["yahoo"] = {{"E3", 1.0}};
    dict.entries["google"] = {{"E4", 1.0}};
    SeedPairSet seeds = seeds_from_dictionary(t.all(PhraseKind::NP), dict, PhraseKind::NP);
    CHECK(seeds.size() == 1);
    CHECK(seeds.contains(t.find(PhraseKind::NP, "trump"), t.find(PhraseKind::NP, "donald trump")));
}

TEST_CASE("dictionary argmax ties break to the smallest entity id") {
    PhraseTable t = table_of({"a", "b"}, PhraseKind::NP);
    MentionDictionary dict;
    dict.entries["a"] = {{"E9", 0.5}, {"E2", 0.5}};  // tie -> E2
    dict.entries["b"] = {{"E2", 0.5}, {"E5", 0.5}};  // tie -> E2
    SeedPairSet seeds = seeds_from_dictionary(t.all(PhraseKind::NP), dict, PhraseKind::NP);
    CHECK(seeds.size() == 1);
}

TEST_CASE("phrases missing from the dictionary emit nothing") {
    PhraseTable t = table_of({"a", "b"}, PhraseKind::NP);
    MentionDictionary dict;
    dict.entries["a"] = {{"E1", 1.0}};
    SeedPairSet seeds = seeds_from_dictionary(t.all(PhraseKind::NP), dict, PhraseKind::NP);
    CHECK(seeds.size() == 0);
}

TEST_CASE("url seeds use strict jaccard threshold") {
    PhraseTable t = table_of({"a", "b", "c"}, PhraseKind::NP);
    UrlProfiles prof;
    prof.urls[t.find(PhraseKind::NP, "a")] = {"u1", "u2"};
    prof.urls[t.find(PhraseKind::NP, "b")] = {"u2", "u3"};
    SUBCASE("overlapping sets pair") {
        SeedPairSet s = seeds_from_urls(t.all(PhraseKind::NP), prof, PhraseKind::NP, 0.015);
        CHECK(s.size() == 1);  // jaccard 1/3
    }
    SUBCASE("disjoint sets do not") {
        prof.urls[t.find(PhraseKind::NP, "b")] = {"u8", "u9"};
        SeedPairSet s = seeds_from_urls(t.all(PhraseKind::NP), prof, PhraseKind::NP, 0.015);
        CHECK(s.size() == 0);
    }
    SUBCASE("identical sets pair at jaccard 1") {
        prof.urls[t.find(PhraseKind::NP, "c")] = {"u1", "u2"};
        SeedPairSet s = seeds_from_urls(t.all(PhraseKind::NP), prof, PhraseKind::NP, 0.015);
        CHECK(s.contains(t.find(PhraseKind::NP, "a"), t.find(PhraseKind::NP, "c")));
    }
}

TEST_CASE("raising the url threshold never adds pairs") {
    Rng rng(42);
    PhraseTable t;
    UrlProfiles prof;
    for (int i = 0; i < 25; ++i) {
        PhraseId id = t.intern(PhraseKind::NP, "p" + std::to_string(i));
        int m = 1 + static_cast<int>(rng.index(6));
        for (int j = 0; j < m; ++j)
            prof.urls[id].insert("u" + std::to_string(rng.index(12)));
    }
    SeedPairSet lo = seeds_from_urls(t.all(PhraseKind::NP), prof, PhraseKind::NP, 0.1);
    SeedPairSet hi = seeds_from_urls(t.all(PhraseKind::NP), prof, PhraseKind::NP, 0.5);
    for (const auto& pr : hi.pairs) CHECK(lo.pairs.count(pr) == 1);
    CHECK(hi.size() <= lo.size());
}

TEST_CASE("seed components: transitive closure plus singletons") {
    PhraseTable t = table_of({"a", "b", "c", "d"}, PhraseKind::NP);
    SeedPairSet seeds;
    seeds.insert(t.find(PhraseKind::NP, "a"), t.find(PhraseKind::NP, "b"));
    seeds.insert(t.find(PhraseKind::NP, "b"), t.find(PhraseKind::NP, "c"));
    std::vector<PhraseId> universe{0, 1, 2, 3};
    Clustering c = seed_components(universe, seeds);
    CHECK(c.k == 2);
    CHECK(c.assign[0] == c.assign[1]);
    CHECK(c.assign[1] == c.assign[2]);
    CHECK(c.assign[3] != c.assign[0]);
}

TEST_CASE("no pairs gives all singletons") {
    SeedPairSet seeds;
    Clustering c = seed_components({0, 1, 2}, seeds);
    CHECK(c.k == 3);
}

TEST_CASE("two chains form two components (union-find oracle)") {
    // independent oracle: label propagation to fixpoint
    std::vector<PhraseId> universe{0, 1, 2, 3, 4, 5};
    SeedPairSet seeds;
    seeds.insert(0, 1);
    seeds.insert(1, 2);
    seeds.insert(3, 4);
    seeds.insert(4, 5);
    std::vector<int> oracle(universe.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) oracle[i] = static_cast<int>(i);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b] : seeds.pairs) {
            int m = std::min(oracle[a], oracle[b]);
            if (oracle[a] != m || oracle[b] != m) {
                oracle[a] = oracle[b] = m;
                changed = true;
            }
        }
    }
    Clustering c = seed_components(universe, seeds);
    CHECK(c.k == 2);
    for (std::size_t i = 0; i < universe.size(); ++i)
        for (std::size_t j = 0; j < universe.size(); ++j)
            CHECK((c.assign[i] == c.assign[j]) == (oracle[i] == oracle[j]));
}

TEST_CASE("components form a partition and merge emitted pairs") {
    Rng rng(7);
    std::vector<PhraseId> universe;
    for (int i = 0; i < 40; ++i) universe.push_back(i);
    SeedPairSet seeds;
    for (int e = 0; e < 25; ++e)
        seeds.insert(static_cast<PhraseId>(rng.index(40)), static_cast<PhraseId>(rng.index(40)));
    Clustering c = seed_components(universe, seeds);
    for (int a : c.assign) {
        CHECK(a >= 0);
        CHECK(a < c.k);
    }
    for (const auto& [a, b] : seeds.pairs) CHECK(c.assign[a] == c.assign[b]);
}

TEST_CASE("seed pair file round-trip, unknown surfaces skipped") {
    auto dir = testutil::tmp_dir("seeds_file");
    PhraseTable t = table_of({"alpha", "beta"}, PhraseKind::RP);
    auto path = testutil::write_file(dir, "pairs.tsv", "alpha\tbeta\nalpha\tmissing\n");
    int warnings = 0;
    set_warn_handler([&](const std::string&) { ++warnings; });
    SeedPairSet seeds = load_seed_pair_file(path, t, PhraseKind::RP);
    set_warn_handler({});
    CHECK(seeds.size() == 1);
    CHECK(warnings == 1);

    auto out_path = dir + "/out.tsv";
    save_seed_pairs(seeds, t, out_path);
    SeedPairSet back = load_seed_pair_file(out_path, t, PhraseKind::RP);
    CHECK(back.pairs == seeds.pairs);
}

TEST_CASE("self pairs are ignored") {
    SeedPairSet seeds;
    seeds.insert(3, 3);
    CHECK(seeds.size() == 0);
}
