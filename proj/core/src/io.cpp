#include "optsig/io.hpp"

#include <fstream>

namespace optsig {

using nlohmann::json;

namespace {

Rat rat_from_json(const json& j, const std::string& path) {
    try {
        if (j.is_string()) return rat_parse(j.get<std::string>());
        if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    throw ParseError(path + ": expected a rational string like \"1/3\"");
}

}  // namespace

json instance_to_json(const Instance& inst) {
    json buyers = json::array();
    for (const auto& b : inst.buyers) {
        json support = json::array(), mass = json::array();
        for (const auto& v : b.support) support.push_back(rat_str(v));
        for (const auto& f : b.mass) mass.push_back(rat_str(f));
        buyers.push_back({{"support", support}, {"mass", mass}});
    }
    return {{"buyers", buyers}};
}

Instance instance_from_json(const json& j) {
    if (!j.is_object() || !j.contains("buyers") || !j["buyers"].is_array())
        throw ParseError("instance: missing \"buyers\" array");
    Instance inst;
    int i = 0;
    for (const auto& b : j["buyers"]) {
        std::string at = "buyers[" + std::to_string(i) + "]";
        if (!b.is_object() || !b.contains("support") || !b.contains("mass") ||
            !b["support"].is_array() || !b["mass"].is_array())
            throw ParseError(at + ": expected {\"support\": [...], \"mass\": [...]}");
        DiscreteDistribution d;
        int a = 0;
        for (const auto& v : b["support"])
            d.support.push_back(rat_from_json(v, at + ".support[" + std::to_string(a++) + "]"));
        a = 0;
        for (const auto& f : b["mass"])
            d.mass.push_back(rat_from_json(f, at + ".mass[" + std::to_string(a++) + "]"));
        inst.buyers.push_back(std::move(d));
        ++i;
    }
    validate(inst);
    return inst;
}

json partitions_to_json(const SignalProfile& profile) {
    json out = json::array();
    for (const auto& part : profile.partitions) {
        json blocks = json::array();
        for (const auto& b : part.blocks) blocks.push_back({b.lo, b.hi});
        out.push_back(blocks);
    }
    return out;
}

SignalProfile partitions_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("partitions: expected an array");
    SignalProfile profile;
    int i = 0;
    for (const auto& pj : j) {
        std::string at = "partitions[" + std::to_string(i++) + "]";
        if (!pj.is_array()) throw ParseError(at + ": expected an array of [lo, hi] blocks");
        MonotonePartition part;
        for (const auto& bj : pj) {
            if (!bj.is_array() || bj.size() != 2 || !bj[0].is_number_integer() ||
                !bj[1].is_number_integer())
                throw ParseError(at + ": blocks must be [lo, hi] index pairs");
            part.blocks.push_back({bj[0].get<int>(), bj[1].get<int>()});
        }
        profile.partitions.push_back(std::move(part));
    }
    return profile;
}

json mechanism_to_json(const Mechanism& mech) {
    json out;
    if (const auto* s = std::get_if<SequentialPostedPrice>(&mech.kind)) {
        out["type"] = "sequential";
        json steps = json::array();
        for (const auto& st : s->schedule)
            steps.push_back(
                {{"buyer", st.buyer}, {"block", st.block}, {"price", rat_str(st.price)}});
        out["schedule"] = steps;
    } else {
        const auto& p = std::get<PermutationMechanism>(mech.kind);
        out["type"] = "permutation";
        json order = json::array();
        for (const auto& e : p.order)
            order.push_back({{"buyer", e.buyer}, {"block", e.block}});
        out["order"] = order;
    }
    return out;
}

Mechanism mechanism_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw ParseError("mechanism: missing \"type\"");
    std::string type = j["type"].get<std::string>();
    Mechanism mech;
    if (type == "sequential") {
        SequentialPostedPrice s;
        if (!j.contains("schedule") || !j["schedule"].is_array())
            throw ParseError("mechanism: sequential requires a \"schedule\" array");
        int i = 0;
        for (const auto& st : j["schedule"]) {
            std::string at = "schedule[" + std::to_string(i++) + "]";
            if (!st.is_object() || !st.contains("buyer") || !st.contains("block") ||
                !st.contains("price"))
                throw ParseError(at + ": expected {buyer, block, price}");
            s.schedule.push_back({st["buyer"].get<int>(), st["block"].get<int>(),
                                  rat_from_json(st["price"], at + ".price")});
        }
        mech.kind = std::move(s);
    } else if (type == "permutation") {
        PermutationMechanism p;
        if (!j.contains("order") || !j["order"].is_array())
            throw ParseError("mechanism: permutation requires an \"order\" array");
        int i = 0;
        for (const auto& e : j["order"]) {
            std::string at = "order[" + std::to_string(i++) + "]";
            if (!e.is_object() || !e.contains("buyer") || !e.contains("block"))
                throw ParseError(at + ": expected {buyer, block}");
            p.order.push_back({e["buyer"].get<int>(), e["block"].get<int>()});
        }
        mech.kind = std::move(p);
    } else {
        throw ParseError("mechanism: unknown type \"" + type + "\"");
    }
    return mech;
}

json design_to_json(const DesignFile& design) {
    return {{"partitions", partitions_to_json(design.profile)},
            {"mechanism", mechanism_to_json(design.mechanism)}};
}

DesignFile design_from_json(const json& j) {
    if (!j.is_object() || !j.contains("partitions") || !j.contains("mechanism"))
        throw ParseError("design: expected {\"partitions\": ..., \"mechanism\": ...}");
    return {partitions_from_json(j["partitions"]), mechanism_from_json(j["mechanism"])};
}

Instance load_instance(const std::string& path) { return instance_from_json(load_json(path)); }

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON in " + path);
    return j;
}

}  // namespace optsig
