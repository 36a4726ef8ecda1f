#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rsrepair/field.hpp"
#include "rsrepair/schemes.hpp"

namespace rsrepair {

using json = nlohmann::json;
using SchemeVariant = std::variant<RepairScheme, DecodingScheme>;

inline json scheme_to_json(const RepairScheme& s) {
    return json{{"type", "kloosterman"},
                {"p", s.field().p()},
                {"n", s.n()},
                {"ell", s.ell()},
                {"k", s.k()},
                {"t", s.t()}};
}

inline json scheme_to_json(const DecodingScheme& s) {
    return json{{"type", "weil"},
                {"p", s.field().p()},
                {"B", s.B()},
                {"k", s.k()},
                {"missing", s.missing()},
                {"t", s.t()}};
}

inline json scheme_to_json(const SchemeVariant& s) {
    return std::visit([](const auto& x) { return scheme_to_json(x); }, s);
}

inline SchemeVariant scheme_from_json(const json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "kloosterman") {
            RepairScheme s(PrimeField(j.at("p").get<u64>()), j.at("n").get<u64>(),
                           j.at("ell").get<u64>(), j.at("k").get<u64>(),
                           j.at("t").get<u64>());
            return s;
        }
        if (type == "weil") {
            DecodingScheme s(PrimeField(j.at("p").get<u64>()), j.at("B").get<u64>(),
                             j.at("k").get<u64>(),
                             j.at("missing").get<std::vector<u64>>());
            if (j.contains("t") && j.at("t").get<u64>() != s.t())
                throw ParseError("descriptor t does not match ceil(p/2^B)");
            return s;
        }
        throw ParseError("unknown scheme type \"" + type + "\"");
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad scheme descriptor: ") + e.what());
    }
}

inline json transcript_to_json(const SchemeVariant& scheme, const Transcript& tr) {
    json entries = json::array();
    for (const auto& e : tr.entries)
        entries.push_back(json{{"node", e.node}, {"bucket", e.bucket}});
    return json{{"scheme", scheme_to_json(scheme)},
                {"entries", entries},
                {"bits_per_node", tr.bits_per_node}};
}

inline std::pair<SchemeVariant, Transcript> transcript_from_json(const json& j) {
    try {
        SchemeVariant scheme = scheme_from_json(j.at("scheme"));
        Transcript tr;
        tr.bits_per_node = j.at("bits_per_node").get<std::uint32_t>();
        for (const auto& e : j.at("entries"))
            tr.entries.push_back(
                {e.at("node").get<u64>(), e.at("bucket").get<std::uint32_t>()});
        return {std::move(scheme), std::move(tr)};
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad transcript file: ") + e.what());
    }
}

inline json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    return j;
}

} // namespace rsrepair
