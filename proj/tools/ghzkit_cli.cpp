#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ghzkit/analysis.hpp"
#include "ghzkit/serialize.hpp"

namespace {

using nlohmann::ordered_json;
using namespace ghzkit;

constexpr int kExitContradiction = 0;
constexpr int kExitError = 1;
constexpr int kExitModelExists = 2;

std::uint64_t brute_cap_default() {
    if (const char* env = std::getenv("GHZKIT_BRUTE_CAP")) {
        try {
            const long long value = std::stoll(env);
            if (value > 0)
                return static_cast<std::uint64_t>(value);
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring bad GHZKIT_BRUTE_CAP '" << env << "'\n";
    }
    return kDefaultBruteCap;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool looks_like_json(const std::string& text) {
    for (const char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
            continue;
        return c == '{';
    }
    return false;
}

std::pair<PhaseFrac, PhaseFrac> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw Error("--pair wants two phases like 0/1,1/3");
    return {PhaseFrac::parse(text.substr(0, comma)),
            PhaseFrac::parse(text.substr(comma + 1))};
}

std::string status_word(SolveStatus status) {
    switch (status) {
    case SolveStatus::Sat:
        return "sat";
    case SolveStatus::Unsat:
        return "unsat";
    default:
        return "too-large";
    }
}

ordered_json instance_block(const ParadoxInstance& inst, const std::string& source) {
    ordered_json block;
    block["source"] = source;
    block["digest"] = instance_digest(inst);
    block["parties"] = inst.parties;
    block["settings"] = inst.settings;
    block["dim"] = inst.dim;
    block["order"] = inst.order;
    block["pair"] = {inst.last_pair.first.str(), inst.last_pair.second.str()};
    return block;
}

ordered_json witness_json(const CongruenceSystem& sys,
                          const std::vector<long long>& witness) {
    ordered_json w;
    for (std::size_t j = 0; j < sys.variables.size(); ++j)
        w[sys.variables[j].label()] = witness[j];
    return w;
}

std::string witness_line(const CongruenceSystem& sys,
                         const std::vector<long long>& witness) {
    std::ostringstream out;
    for (std::size_t j = 0; j < sys.variables.size(); ++j) {
        if (j)
            out << "  ";
        out << sys.variables[j].label() << "=" << witness[j];
    }
    return out.str();
}

void emit_report(ordered_json& report, int code) {
    report["exit_code"] = code;
    std::cout << report.dump(2) << "\n";
}

ordered_json report_skeleton(const std::string& command) {
    ordered_json report;
    report["format"] = "ghz-paradox-report";
    report["schema_version"] = 1;
    report["command"] = command;
    return report;
}

void print_instance_summary(const ParadoxInstance& inst) {
    std::cout << "instance: " << inst.parties << " parties, " << inst.settings
              << " settings per free party, dim " << inst.dim << " (scalar order "
              << inst.order << ")\n";
    std::cout << "fixed-party pair: {" << inst.last_pair.first.str() << ", "
              << inst.last_pair.second.str() << "}\n";
    std::cout << "digest: " << instance_digest(inst) << "\n";
}

struct GenerateOpts {
    int parties = 3;
    int settings = 0;
    int dim_factor = 1;
    std::string pair;
    std::string out;
    bool json = false;
};

int run_generate(const GenerateOpts& opt) {
    std::optional<std::pair<PhaseFrac, PhaseFrac>> pair;
    if (!opt.pair.empty())
        pair = parse_pair(opt.pair);

    ParadoxInstance inst;
    if (opt.parties == 3) {
        inst = generate_tripartite(opt.settings == 0 ? 3 : opt.settings,
                                   opt.dim_factor, pair);
    } else {
        if (opt.settings != 0 && opt.settings != opt.parties)
            throw Error("beyond three parties the setting count equals the "
                        "party count; drop --settings or set it to " +
                        std::to_string(opt.parties));
        inst = generate_npartite(opt.parties, opt.dim_factor, pair);
    }

    if (!opt.out.empty()) {
        save_instance_file(inst, opt.out);
        if (opt.json) {
            ordered_json report = report_skeleton("generate");
            report["instance"] = instance_block(inst, "generated");
            report["written"] = opt.out;
            emit_report(report, kExitContradiction);
        } else {
            std::cout << "wrote " << opt.out << " (" << instance_digest(inst) << ")\n";
        }
        return kExitContradiction;
    }

    if (opt.json) {
        std::cout << instance_to_json(inst) << "\n";
        return kExitContradiction;
    }

    print_instance_summary(inst);
    std::cout << "composites (family r | phases | gamma):\n";
    for (const Composite& comp : inst.composites) {
        std::cout << "  " << comp.family << " r=" << comp.r << " |";
        for (const PhaseFrac& p : comp.phases)
            std::cout << " " << p.str();
        std::cout << " | " << comp.gamma << "\n";
    }
    std::cout << "use --out FILE or --json for the machine form\n";
    return kExitContradiction;
}

struct FileOpts {
    std::string file;
    bool json = false;
};

int run_verify(const FileOpts& opt) {
    ParadoxInstance inst;
    try {
        inst = load_instance_file(opt.file);
    } catch (const Error& e) {
        if (opt.json) {
            ordered_json report = report_skeleton("verify");
            report["loaded"] = false;
            report["error"] = e.what();
            emit_report(report, kExitError);
        } else {
            std::cerr << "error: " << e.what() << "\n";
        }
        return kExitError;
    }

    const ConcurrencyReport rep = verify_concurrency(inst);
    const bool concurrent = rep.common_eigenstate && !rep.all_commute;
    const int code = concurrent ? kExitContradiction : kExitModelExists;

    if (opt.json) {
        ordered_json report = report_skeleton("verify");
        report["loaded"] = true;
        report["instance"] = instance_block(inst, opt.file);
        ordered_json section;
        section["eigenstate"] = rep.eigenstate;
        section["common_eigenstate"] = rep.common_eigenstate;
        section["all_commute"] = rep.all_commute;
        if (rep.noncommuting_pair)
            section["noncommuting_pair"] = {rep.noncommuting_pair->first,
                                            rep.noncommuting_pair->second};
        section["concurrent"] = concurrent;
        report["concurrency"] = std::move(section);
        emit_report(report, code);
        return code;
    }

    print_instance_summary(inst);
    for (std::size_t i = 0; i < inst.composites.size(); ++i) {
        const Composite& comp = inst.composites[i];
        std::cout << "  " << comp.family << " r=" << comp.r << " |";
        for (const PhaseFrac& p : comp.phases)
            std::cout << " " << p.str();
        std::cout << " | gamma " << comp.gamma << " | eigenstate "
                  << (rep.eigenstate[i] ? "ok" : "FAIL") << "\n";
    }
    std::cout << "common eigenstate: " << (rep.common_eigenstate ? "yes" : "no") << "\n";
    if (rep.all_commute)
        std::cout << "all composites commute: yes\n";
    else
        std::cout << "all composites commute: no (composites "
                  << rep.noncommuting_pair->first + 1 << " and "
                  << rep.noncommuting_pair->second + 1 << ")\n";
    std::cout << "concurrent observables: " << (concurrent ? "yes" : "no") << "\n";
    return code;
}

struct LhvOpts {
    std::string file;
    std::string method = "both";
    std::uint64_t cap = 0;
    std::vector<std::string> overrides;
    bool json = false;
};

int run_lhv(const LhvOpts& opt) {
    const std::string text = read_file(opt.file);
    std::optional<ParadoxInstance> inst;
    CongruenceSystem sys;
    if (looks_like_json(text)) {
        inst = instance_from_json(text);
        sys = extract_system(*inst);
    } else {
        sys = parse_system_text(text);
    }

    for (const std::string& spec : opt.overrides) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw Error("--override-rhs wants INDEX=VALUE, got '" + spec + "'");
        const std::size_t index = std::stoull(spec.substr(0, eq));
        const long long value = std::stoll(spec.substr(eq + 1));
        if (index >= sys.rhs.size())
            throw Error("--override-rhs index " + std::to_string(index) +
                        " out of range (have " + std::to_string(sys.rhs.size()) +
                        " equations)");
        sys.rhs[index] = ((value % sys.modulus) + sys.modulus) % sys.modulus;
    }

    const std::uint64_t cap = opt.cap ? opt.cap : brute_cap_default();
    std::optional<SolveResult> snf, brute;
    if (opt.method == "snf" || opt.method == "both")
        snf = snf_solve(sys);
    if (opt.method == "brute" || opt.method == "both")
        brute = brute_force_solve(sys, cap);
    if (snf && brute && brute->status != SolveStatus::TooLarge &&
        (snf->status == SolveStatus::Sat) != (brute->status == SolveStatus::Sat))
        throw Error("internal: solvers disagree");

    std::optional<LrCondition> lr;
    if (inst && opt.overrides.empty())
        lr = lr_congruence(*inst);

    SolveStatus verdict = SolveStatus::TooLarge;
    const SolveResult* decided = nullptr;
    for (const auto* r : {&brute, &snf})
        if (*r && (*r)->status != SolveStatus::TooLarge) {
            verdict = (*r)->status;
            decided = &**r;
            if (verdict == SolveStatus::Sat)
                break;
        }
    const int code = verdict == SolveStatus::TooLarge ? kExitError
                     : verdict == SolveStatus::Sat    ? kExitModelExists
                                                      : kExitContradiction;

    if (opt.json) {
        ordered_json report = report_skeleton("lhv");
        if (inst)
            report["instance"] = instance_block(*inst, opt.file);
        ordered_json system;
        system["modulus"] = sys.modulus;
        system["variables"] = ordered_json::array();
        for (const VarKey& v : sys.variables)
            system["variables"].push_back(v.label());
        system["equations"] = ordered_json::array();
        {
            std::istringstream lines(system_to_text(sys));
            std::string line;
            while (std::getline(lines, line))
                system["equations"].push_back(line);
        }
        system["rhs_overridden"] = !opt.overrides.empty();
        report["system"] = std::move(system);

        ordered_json methods;
        for (const auto& [name, result] :
             {std::pair{"snf", &snf}, std::pair{"brute_force", &brute}}) {
            if (!*result)
                continue;
            ordered_json m;
            m["status"] = status_word((*result)->status);
            if ((*result)->witness)
                m["witness"] = witness_json(sys, *(*result)->witness);
            if ((*result)->space)
                m["space"] = (*result)->space;
            methods[name] = std::move(m);
        }
        report["methods"] = std::move(methods);

        if (lr) {
            ordered_json section;
            section["coefficient"] = lr->coefficient;
            section["eta"] = lr->eta;
            section["modulus"] = lr->modulus;
            section["solvable"] = lr->solvable;
            if (lr->witness_xi)
                section["xi"] = *lr->witness_xi;
            report["aggregate_relation"] = std::move(section);
        }
        report["classical_model"] = verdict == SolveStatus::Sat;
        emit_report(report, code);
        return code;
    }

    std::cout << "system: " << sys.variables.size() << " variables, "
              << sys.rows.size() << " equations (mod " << sys.modulus << ")\n";
    std::cout << system_to_text(sys);
    if (!opt.overrides.empty())
        std::cout << "right sides overridden: yes\n";
    if (snf)
        std::cout << "smith form: " << status_word(snf->status) << "\n";
    if (brute) {
        std::cout << "brute force: " << status_word(brute->status);
        if (brute->space)
            std::cout << " (space " << brute->space << ")";
        if (brute->status == SolveStatus::TooLarge)
            std::cout << " (cap " << cap << ")";
        std::cout << "\n";
    }
    if (lr) {
        std::cout << "aggregate relation: " << lr->coefficient << "*xi = " << lr->eta
                  << " (mod " << lr->modulus << ") -> "
                  << (lr->solvable ? "solvable" : "unsolvable");
        if (lr->witness_xi)
            std::cout << ", xi = " << *lr->witness_xi;
        std::cout << "\n";
    }
    if (verdict == SolveStatus::Sat)
        std::cout << "classical model found:\n  " << witness_line(sys, *decided->witness)
                  << "\n";
    else if (verdict == SolveStatus::Unsat)
        std::cout << "no classical model reproduces the assigned eigenvalues\n";
    else
        std::cout << "undecided: brute force capped and no exact method ran\n";
    return code;
}

struct AnalyzeOpts {
    std::string file;
    bool irreducibility = false;
    bool prime_reduction = false;
    bool party_removal = false;
    bool dimension = false;
    bool json = false;
};

int run_analyze(const AnalyzeOpts& opt) {
    ParadoxInstance inst = load_instance_file(opt.file);
    const bool all = !opt.irreducibility && !opt.prime_reduction &&
                     !opt.party_removal && !opt.dimension;

    const CongruenceSystem sys = extract_system(inst);
    const SolveResult base = snf_solve(sys);
    ordered_json report = report_skeleton("analyze");
    report["instance"] = instance_block(inst, opt.file);
    report["classical_model"] = base.status == SolveStatus::Sat;

    if (base.status == SolveStatus::Sat) {
        if (opt.json) {
            report["note"] = "instance admits a classical model; nothing to analyze";
            emit_report(report, kExitModelExists);
        } else {
            print_instance_summary(inst);
            std::cout << "instance admits a classical model; nothing to analyze\n";
        }
        return kExitModelExists;
    }

    if (!opt.json)
        print_instance_summary(inst);

    if (all || opt.irreducibility) {
        const auto scan = irreducibility_scan(inst);
        const bool removals_solvable = is_irreducible(scan);
        const bool prime_subset = has_proper_prime_reduction(inst);
        const bool irreducible = removals_solvable && !prime_subset;
        if (opt.json) {
            ordered_json section;
            section["irreducible"] = irreducible;
            section["prime_subset_contradicts"] = prime_subset;
            section["removals"] = ordered_json::array();
            for (const RemovalReport& r : scan) {
                ordered_json entry;
                entry["party"] = r.party;
                entry["setting"] = r.setting.str();
                entry["surviving_equations"] = r.surviving_equations;
                entry["solvable"] = r.solvable;
                if (r.witness)
                    entry["witness"] = witness_json(sys, *r.witness);
                entry["lone_variables"] = ordered_json::array();
                for (const VarKey& v : r.lone_variables)
                    entry["lone_variables"].push_back(v.label());
                section["removals"].push_back(std::move(entry));
            }
            report["irreducibility"] = std::move(section);
        } else {
            std::cout << "single-setting removals:\n";
            for (const RemovalReport& r : scan) {
                std::cout << "  drop party " << r.party << " setting "
                          << r.setting.str() << ": " << r.surviving_equations.size()
                          << " equations remain, "
                          << (r.solvable ? "classical model exists" : "still contradictory");
                if (!r.lone_variables.empty()) {
                    std::cout << ", lone:";
                    for (const VarKey& v : r.lone_variables)
                        std::cout << " " << v.label();
                }
                std::cout << "\n";
            }
            if (irreducible)
                std::cout << "irreducible: yes\n";
            else if (!removals_solvable)
                std::cout << "irreducible: no (a single-setting removal is still contradictory)\n";
            else
                std::cout << "irreducible: no (a prime subset of the settings still contradicts)\n";
        }
    }

    if (all || opt.prime_reduction) {
        ordered_json section = ordered_json::array();
        if (!opt.json)
            std::cout << "prime reductions:\n";
        bool any = false;
        for (int q = 2; q < inst.settings; ++q) {
            if (inst.settings % q != 0)
                continue;
            bool prime = q >= 2;
            for (int f = 2; f * f <= q && prime; ++f)
                if (q % f == 0)
                    prime = false;
            if (!prime)
                continue;
            any = true;
            if (inst.parties != 3) {
                if (opt.json) {
                    ordered_json entry;
                    entry["q"] = q;
                    entry["reduced"] = false;
                    entry["note"] = "unavailable beyond three parties";
                    section.push_back(std::move(entry));
                } else {
                    std::cout << "  q=" << q << ": unavailable beyond three parties\n";
                }
                continue;
            }
            const auto sub = prime_reduction(inst, q);
            ordered_json entry;
            entry["q"] = q;
            entry["reduced"] = sub.has_value();
            if (sub) {
                entry["instance"] = instance_block(*sub, "derived");
                const auto sub_solve = snf_solve(extract_system(*sub));
                entry["classical_model"] = sub_solve.status == SolveStatus::Sat;
            }
            if (!opt.json && sub)
                std::cout << "  q=" << q << ": " << sub->settings
                          << " settings on dim " << sub->dim << ", still contradictory\n";
            section.push_back(std::move(entry));
        }
        if (!any && !opt.json)
            std::cout << "  none: the setting count has no smaller prime divisor\n";
        if (opt.json)
            report["prime_reduction"] = std::move(section);
    }

    if (all || opt.party_removal) {
        const bool genuine = genuine_in_parties(inst);
        if (opt.json) {
            ordered_json section;
            section["genuine"] = genuine;
            section["parties"] = ordered_json::array();
            for (int k = 1; k <= inst.parties; ++k) {
                const PartyRemovalReport r = party_removal_check(inst, k);
                ordered_json entry;
                entry["party"] = k;
                entry["still_eigenstate"] = r.still_eigenstate;
                entry["no_common_eigenstate"] = r.no_common_eigenstate;
                section["parties"].push_back(std::move(entry));
            }
            report["party_removal"] = std::move(section);
        } else {
            std::cout << "party removal:\n";
            for (int k = 1; k <= inst.parties; ++k) {
                const PartyRemovalReport r = party_removal_check(inst, k);
                std::size_t broken = 0;
                for (const bool ok : r.still_eigenstate)
                    broken += ok ? 0 : 1;
                std::cout << "  drop party " << k << ": " << broken
                          << " composites lose the shared eigenstate\n";
            }
            std::cout << "genuinely multipartite: " << (genuine ? "yes" : "no") << "\n";
        }
    }

    if (all || opt.dimension) {
        const DimReport dim = dimension_check(inst);
        if (opt.json) {
            ordered_json section;
            section["pass"] = dim.pass;
            section["min_overlap"] = dim.min_overlap;
            section["overlaps_checked"] = dim.overlaps_checked;
            section["pairs"] = ordered_json::array();
            for (const PhasePairOverlap& p : dim.pairs) {
                ordered_json entry;
                entry["party"] = p.party;
                entry["alpha"] = p.alpha.str();
                entry["alpha_prime"] = p.alpha_prime.str();
                entry["min_overlap"] = p.min_overlap;
                section["pairs"].push_back(std::move(entry));
            }
            report["dimension"] = std::move(section);
        } else {
            std::cout << "eigenvector overlaps: " << dim.overlaps_checked
                      << " checked, min " << dim.min_overlap
                      << (dim.pass ? " (all positive: no dimension collapses)"
                                   : " (FAIL: vanishing overlap found)")
                      << "\n";
        }
    }

    if (opt.json)
        emit_report(report, kExitContradiction);
    return kExitContradiction;
}

int run_demo(bool json) {
    const CongruenceSystem sys = mermin_system();
    const SolveResult snf = snf_solve(sys);
    const SolveResult brute = brute_force_solve(sys, kDefaultBruteCap);
    const bool unsat =
        snf.status == SolveStatus::Unsat && brute.status == SolveStatus::Unsat;
    const int code = unsat ? kExitContradiction : kExitModelExists;

    if (json) {
        ordered_json report = report_skeleton("demo");
        report["demo"] = "mermin";
        ordered_json system;
        system["modulus"] = sys.modulus;
        system["variables"] = ordered_json::array();
        for (const VarKey& v : sys.variables)
            system["variables"].push_back(v.label());
        system["equations"] = ordered_json::array();
        std::istringstream lines(system_to_text(sys));
        std::string line;
        while (std::getline(lines, line))
            system["equations"].push_back(line);
        report["system"] = std::move(system);
        report["snf"] = status_word(snf.status);
        report["brute_force"] = status_word(brute.status);
        report["classical_model"] = !unsat;
        emit_report(report, code);
        return code;
    }

    std::cout << "three qubits, two settings each, outcomes in {0,1} (mod 2):\n";
    std::cout << system_to_text(sys);
    std::cout << "adding all four equations gives 2*(sum) = 1 (mod 2), "
                 "so no assignment works\n";
    std::cout << "smith form: " << status_word(snf.status) << ", brute force over "
              << brute.space << " assignments: " << status_word(brute.status) << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for multisetting all-versus-nothing arguments"};
    app.require_subcommand(1);

    GenerateOpts gen;
    CLI::App* generate = app.add_subcommand(
        "generate", "build an instance from the two-family construction");
    generate->add_option("--parties", gen.parties, "party count (3, or any odd count)")
        ->check(CLI::Range(3, 99));
    generate->add_option("--settings", gen.settings,
                         "settings per free party (default 3; three-party only)");
    generate->add_option("--dim-factor", gen.dim_factor,
                         "multiplies the base dimension")
        ->check(CLI::PositiveNumber);
    generate->add_option("--pair", gen.pair, "fixed-party phases, e.g. 0/1,1/3");
    generate->add_option("--out", gen.out, "write the instance file here");
    generate->add_flag("--json", gen.json, "machine-readable output");

    FileOpts ver;
    CLI::App* verify = app.add_subcommand(
        "verify", "recheck eigenvalues and commutation from a file");
    verify->add_option("file", ver.file, "instance file")->required();
    verify->add_flag("--json", ver.json, "machine-readable output");

    LhvOpts lhv;
    CLI::App* lhv_cmd = app.add_subcommand(
        "lhv", "decide whether outcome assignments can match the eigenvalues");
    lhv_cmd->add_option("file", lhv.file, "instance file or plain-text equations")
        ->required();
    lhv_cmd->add_option("--method", lhv.method, "snf, brute or both")
        ->check(CLI::IsMember({"snf", "brute", "both"}));
    lhv_cmd->add_option("--cap", lhv.cap,
                        "largest brute-force space (default env GHZKIT_BRUTE_CAP "
                        "or 10^7)");
    lhv_cmd->add_option("--override-rhs", lhv.overrides,
                        "replace a right side, INDEX=VALUE (repeatable)");
    lhv_cmd->add_flag("--json", lhv.json, "machine-readable output");

    AnalyzeOpts ana;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "structural reports: removals, reductions, overlaps");
    analyze->add_option("file", ana.file, "instance file")->required();
    analyze->add_flag("--irreducibility", ana.irreducibility,
                      "single-setting removal scan");
    analyze->add_flag("--prime-reduction", ana.prime_reduction,
                      "shrink the setting count to its prime divisors");
    analyze->add_flag("--party-removal", ana.party_removal,
                      "which composites survive dropping one party");
    analyze->add_flag("--dimension", ana.dimension, "eigenvector overlap scan");
    analyze->add_flag("--json", ana.json, "machine-readable output");

    std::string demo_name;
    bool demo_json = false;
    CLI::App* demo = app.add_subcommand("demo", "built-in worked examples");
    demo->add_option("name", demo_name, "demo name")
        ->required()
        ->check(CLI::IsMember({"mermin"}));
    demo->add_flag("--json", demo_json, "machine-readable output");

    try {
        app.parse(argc, argv);
        if (generate->parsed())
            return run_generate(gen);
        if (verify->parsed())
            return run_verify(ver);
        if (lhv_cmd->parsed())
            return run_lhv(lhv);
        if (analyze->parsed())
            return run_analyze(ana);
        if (demo->parsed())
            return run_demo(demo_json);
        return kExitError;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitError;
    }
}
