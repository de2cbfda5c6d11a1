#include "ghzkit/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace ghzkit {

using nlohmann::ordered_json;

namespace {

const ordered_json& require(const ordered_json& j, const char* key, const char* where) {
    const auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing field '") + key + "' in " + where);
    return *it;
}

PhaseFrac phase_from(const ordered_json& j, const char* where) {
    if (!j.is_string())
        throw ParseError(std::string("expected a \"num/den\" string in ") + where);
    return PhaseFrac::parse(j.get<std::string>());
}

template <typename T>
T number_from(const ordered_json& j, const char* key, const char* where) {
    const ordered_json& field = require(j, key, where);
    if (!field.is_number_integer())
        throw ParseError(std::string("field '") + key + "' in " + where +
                         " must be an integer");
    return field.get<T>();
}

} // namespace

std::string instance_to_json(const ParadoxInstance& inst, int indent) {
    ordered_json params;
    params["parties"] = inst.parties;
    params["settings"] = inst.settings;
    params["dim_factor"] = inst.dim_factor;
    params["dim"] = inst.dim;
    params["order"] = inst.order;
    params["pair"] = {inst.last_pair.first.str(), inst.last_pair.second.str()};
    params["generator"] = inst.generator;

    ordered_json lists = ordered_json::array();
    for (const auto& settings : inst.party_settings) {
        ordered_json list = ordered_json::array();
        for (const PhaseFrac& p : settings)
            list.push_back(p.str());
        lists.push_back(std::move(list));
    }

    ordered_json composites = ordered_json::array();
    for (const Composite& comp : inst.composites) {
        ordered_json c;
        c["family"] = std::string(1, comp.family);
        c["r"] = comp.r;
        ordered_json phases = ordered_json::array();
        for (const PhaseFrac& p : comp.phases)
            phases.push_back(p.str());
        c["phases"] = std::move(phases);
        c["gamma"] = comp.gamma;
        composites.push_back(std::move(c));
    }

    ordered_json j;
    j["format"] = "ghz-paradox-instance";
    j["schema_version"] = kInstanceSchemaVersion;
    j["parameters"] = std::move(params);
    j["party_settings"] = std::move(lists);
    j["composites"] = std::move(composites);
    if (!inst.t_sequence.empty())
        j["t_sequence"] = inst.t_sequence;
    return indent < 0 ? j.dump() : j.dump(indent);
}

ParadoxInstance instance_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }

    if (require(j, "format", "the top level") != "ghz-paradox-instance")
        throw ParseError("not a ghz-paradox-instance file");
    if (number_from<int>(j, "schema_version", "the top level") != kInstanceSchemaVersion)
        throw ParseError("unsupported schema_version");

    const ordered_json& params = require(j, "parameters", "the top level");
    ParadoxInstance inst;
    inst.parties = number_from<int>(params, "parties", "parameters");
    inst.settings = number_from<int>(params, "settings", "parameters");
    inst.dim_factor = number_from<int>(params, "dim_factor", "parameters");
    inst.dim = number_from<int>(params, "dim", "parameters");
    inst.order = number_from<long long>(params, "order", "parameters");

    const ordered_json& pair = require(params, "pair", "parameters");
    if (!pair.is_array() || pair.size() != 2)
        throw ParseError("parameters.pair must hold two phases");
    inst.last_pair = {phase_from(pair[0], "parameters.pair"),
                      phase_from(pair[1], "parameters.pair")};
    const ordered_json& generator = require(params, "generator", "parameters");
    if (!generator.is_string())
        throw ParseError("parameters.generator must be a string");
    inst.generator = generator.get<std::string>();

    if (inst.dim != inst.settings * inst.dim_factor)
        throw ParseError("parameters.dim must equal settings * dim_factor");

    const ordered_json& lists = require(j, "party_settings", "the top level");
    if (!lists.is_array())
        throw ParseError("party_settings must be an array");
    for (const auto& list : lists) {
        if (!list.is_array())
            throw ParseError("party_settings entries must be arrays");
        std::vector<PhaseFrac> settings;
        for (const auto& p : list)
            settings.push_back(phase_from(p, "party_settings"));
        inst.party_settings.push_back(std::move(settings));
    }

    const ordered_json& composites = require(j, "composites", "the top level");
    if (!composites.is_array())
        throw ParseError("composites must be an array");
    for (const auto& c : composites) {
        Composite comp;
        const ordered_json& family = require(c, "family", "a composite");
        if (!family.is_string() ||
            (family.get<std::string>() != "A" && family.get<std::string>() != "B"))
            throw ParseError("composite family must be \"A\" or \"B\"");
        comp.family = family.get<std::string>().front();
        comp.r = number_from<int>(c, "r", "a composite");
        comp.gamma = number_from<int>(c, "gamma", "a composite");
        const ordered_json& phases = require(c, "phases", "a composite");
        if (!phases.is_array())
            throw ParseError("composite phases must be an array");
        for (const auto& p : phases)
            comp.phases.push_back(phase_from(p, "composite phases"));
        inst.composites.push_back(std::move(comp));
    }

    if (const auto it = j.find("t_sequence"); it != j.end()) {
        if (!it->is_array())
            throw ParseError("t_sequence must be an array");
        for (const auto& t : *it) {
            if (!t.is_number_integer())
                throw ParseError("t_sequence entries must be integers");
            inst.t_sequence.push_back(t.get<int>());
        }
    }

    verify_instance(inst);
    return inst;
}

ParadoxInstance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return instance_from_json(buffer.str());
}

void save_instance_file(const ParadoxInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    out << instance_to_json(inst) << '\n';
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string instance_digest(const ParadoxInstance& inst) {
    const std::uint64_t hash = fnv1a64(instance_to_json(inst, -1));
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << hash;
    return out.str();
}

} // namespace ghzkit
