#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "ghzkit/serialize.hpp"

using namespace ghzkit;

namespace {

bool same_instance(const ParadoxInstance& a, const ParadoxInstance& b) {
    if (a.parties != b.parties || a.settings != b.settings ||
        a.dim_factor != b.dim_factor || a.dim != b.dim || a.order != b.order ||
        a.last_pair != b.last_pair || a.party_settings != b.party_settings ||
        a.t_sequence != b.t_sequence || a.generator != b.generator)
        return false;
    if (a.composites.size() != b.composites.size())
        return false;
    for (std::size_t i = 0; i < a.composites.size(); ++i) {
        const Composite& x = a.composites[i];
        const Composite& y = b.composites[i];
        if (x.phases != y.phases || x.gamma != y.gamma || x.family != y.family ||
            x.r != y.r)
            return false;
    }
    return true;
}

std::string replace_once(std::string text, const std::string& from,
                         const std::string& to) {
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

} // namespace

TEST_CASE("instances survive the JSON round trip") {
    for (const auto& inst : {generate_tripartite(3, 1), generate_tripartite(4, 2),
                             generate_npartite(5, 1)}) {
        const std::string text = instance_to_json(inst);
        const ParadoxInstance back = instance_from_json(text);
        CHECK(same_instance(inst, back));
        CHECK(instance_digest(inst) == instance_digest(back));
    }
}

TEST_CASE("digests tell instances apart and ignore formatting") {
    const ParadoxInstance a = generate_tripartite(3, 1);
    const ParadoxInstance b = generate_tripartite(3, 2);
    CHECK(instance_digest(a) != instance_digest(b));
    CHECK(instance_digest(a).rfind("fnv1a64:", 0) == 0);
    CHECK(instance_digest(a).size() == 8 + 16);
    CHECK(instance_from_json(instance_to_json(a, -1)).parties == 3);
}

TEST_CASE("hash primitive matches the published test vector") {
    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("load rejects tampered eigenvalue bookkeeping") {
    const std::string good = instance_to_json(generate_tripartite(3, 1), -1);

    CHECK_THROWS_AS(instance_from_json(replace_once(good, "\"gamma\":0", "\"gamma\":1")),
                    Error);
    CHECK_THROWS_AS(instance_from_json(replace_once(
                        good, "\"phases\":[\"0/1\",\"0/1\",\"0/1\"]",
                        "\"phases\":[\"1/3\",\"0/1\",\"0/1\"]")),
                    Error);
}

TEST_CASE("load rejects malformed documents") {
    const std::string good = instance_to_json(generate_tripartite(3, 1), -1);
    CHECK_THROWS_AS(instance_from_json("{not json"), ParseError);
    CHECK_THROWS_AS(instance_from_json("{}"), ParseError);
    CHECK_THROWS_AS(instance_from_json(replace_once(
                        good, "\"ghz-paradox-instance\"", "\"something-else\"")),
                    ParseError);
    CHECK_THROWS_AS(instance_from_json(replace_once(good, "\"schema_version\":1",
                                                    "\"schema_version\":99")),
                    ParseError);
    CHECK_THROWS_AS(instance_from_json(replace_once(good, "\"dim\":3", "\"dim\":6")),
                    ParseError);
    CHECK_THROWS_AS(instance_from_json(replace_once(good, "\"0/1\"", "\"0/x\"")),
                    ParseError);
}

TEST_CASE("file round trip") {
    const ParadoxInstance inst = generate_npartite(5, 1);
    const std::string path = "serialize_roundtrip_tmp.json";
    save_instance_file(inst, path);
    const ParadoxInstance back = load_instance_file(path);
    CHECK(same_instance(inst, back));
    CHECK(std::remove(path.c_str()) == 0);
    CHECK_THROWS_AS(load_instance_file(path), Error);
}
