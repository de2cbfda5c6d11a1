#include "ghzkit/congruence.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <utility>

namespace ghzkit {

namespace {

long long floor_mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

void validate_shape(const CongruenceSystem& sys) {
    if (sys.modulus < 2)
        throw Error("congruence modulus must be at least 2");
    if (sys.rows.size() != sys.rhs.size())
        throw Error("system needs one right side per equation");
    for (const auto& row : sys.rows)
        if (row.size() != sys.variables.size())
            throw Error("system row width does not match variable count");
}

// Extended gcd: returns g and x with c*x = g (mod m).
long long mod_inverse_part(long long c, long long m, long long& g) {
    long long old_r = c, r = m;
    long long old_x = 1, x = 0;
    while (r != 0) {
        const long long q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_x = std::exchange(x, old_x - q * x);
    }
    g = old_r;
    return old_x;
}

using Matrix = std::vector<std::vector<long long>>;

Matrix identity_matrix(std::size_t n) {
    Matrix id(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        id[i][i] = 1;
    return id;
}

void swap_rows(Matrix& a, Matrix& u, std::size_t i, std::size_t k) {
    std::swap(a[i], a[k]);
    std::swap(u[i], u[k]);
}

void swap_cols(Matrix& a, Matrix& v, std::size_t j, std::size_t k) {
    for (auto& row : a)
        std::swap(row[j], row[k]);
    for (auto& row : v)
        std::swap(row[j], row[k]);
}

void row_update(Matrix& a, Matrix& u, std::size_t i, std::size_t src, long long factor) {
    for (std::size_t j = 0; j < a[i].size(); ++j)
        a[i][j] += factor * a[src][j];
    for (std::size_t j = 0; j < u[i].size(); ++j)
        u[i][j] += factor * u[src][j];
}

void col_update(Matrix& a, Matrix& v, std::size_t j, std::size_t src, long long factor) {
    for (auto& row : a)
        row[j] += factor * row[src];
    for (auto& row : v)
        row[j] += factor * row[src];
}

} // namespace

std::string VarKey::label() const {
    return "x[" + std::to_string(party) + "," + setting + "]";
}

CongruenceSystem extract_system(const ParadoxInstance& inst) {
    CongruenceSystem sys;
    sys.modulus = inst.dim;

    std::vector<std::size_t> offsets(inst.parties, 0);
    for (int k = 0; k < inst.parties; ++k) {
        offsets[k] = sys.variables.size();
        for (const PhaseFrac& phase : inst.party_settings[k])
            sys.variables.push_back(VarKey{k + 1, phase.str()});
    }

    for (const Composite& comp : inst.composites) {
        std::vector<long long> row(sys.variables.size(), 0);
        for (int k = 0; k < inst.parties; ++k) {
            const auto& list = inst.party_settings[k];
            const auto it = std::lower_bound(list.begin(), list.end(), comp.phases[k]);
            if (it == list.end() || *it != comp.phases[k])
                throw Error("composite phase missing from the party's setting list");
            row[offsets[k] + static_cast<std::size_t>(it - list.begin())] += 1;
        }
        sys.rows.push_back(std::move(row));
        sys.rhs.push_back(floor_mod(-comp.gamma, sys.modulus));
    }
    return sys;
}

bool satisfies(const CongruenceSystem& sys, const std::vector<long long>& assignment) {
    validate_shape(sys);
    if (assignment.size() != sys.variables.size())
        throw Error("assignment length does not match variable count");
    for (std::size_t e = 0; e < sys.rows.size(); ++e) {
        long long sum = 0;
        for (std::size_t j = 0; j < assignment.size(); ++j)
            sum += floor_mod(sys.rows[e][j] * assignment[j], sys.modulus);
        if (floor_mod(sum - sys.rhs[e], sys.modulus) != 0)
            return false;
    }
    return true;
}

SolveResult brute_force_solve(const CongruenceSystem& sys, std::uint64_t cap) {
    validate_shape(sys);
    const long long m = sys.modulus;
    const std::size_t nv = sys.variables.size();

    SolveResult result;
    result.space = 1;
    for (std::size_t j = 0; j < nv; ++j) {
        if (result.space > cap / static_cast<std::uint64_t>(m)) {
            result.status = SolveStatus::TooLarge;
            result.space = 0;
            return result;
        }
        result.space *= static_cast<std::uint64_t>(m);
    }
    if (result.space > cap) {
        result.status = SolveStatus::TooLarge;
        result.space = 0;
        return result;
    }

    const std::size_t ne = sys.rows.size();
    std::vector<int> remaining(ne, 0);
    std::vector<long long> partial(ne, 0);
    std::vector<std::vector<std::size_t>> var_eqs(nv);
    for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t j = 0; j < nv; ++j)
            if (sys.rows[e][j] % m != 0) {
                ++remaining[e];
                var_eqs[j].push_back(e);
            }
    for (std::size_t e = 0; e < ne; ++e)
        if (remaining[e] == 0 && floor_mod(sys.rhs[e], m) != 0) {
            result.status = SolveStatus::Unsat;
            return result;
        }

    std::vector<long long> value(nv, 0);
    // Depth-first over variable values in ascending order; an equation is
    // tested the moment its last variable gets a value, so the first hit is
    // the lexicographically smallest witness.
    auto assign = [&](auto&& self, std::size_t p) -> bool {
        if (p == nv)
            return true;
        for (long long v = 0; v < m; ++v) {
            bool feasible = true;
            std::size_t applied = 0;
            for (; applied < var_eqs[p].size(); ++applied) {
                const std::size_t e = var_eqs[p][applied];
                partial[e] += sys.rows[e][p] * v;
                if (--remaining[e] == 0 &&
                    floor_mod(partial[e] - sys.rhs[e], m) != 0) {
                    ++applied;
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                value[p] = v;
                if (self(self, p + 1))
                    return true;
            }
            for (std::size_t k = 0; k < applied; ++k) {
                const std::size_t e = var_eqs[p][k];
                partial[e] -= sys.rows[e][p] * v;
                ++remaining[e];
            }
        }
        return false;
    };

    if (assign(assign, 0)) {
        result.status = SolveStatus::Sat;
        result.witness = value;
    } else {
        result.status = SolveStatus::Unsat;
    }
    return result;
}

SmithDecomposition smith_normal_form(Matrix a) {
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a.front().size();
    for (const auto& row : a)
        if (row.size() != n)
            throw Error("ragged matrix");

    SmithDecomposition dec;
    dec.u = identity_matrix(m);
    dec.v = identity_matrix(n);

    std::size_t t = 0;
    while (t < m && t < n) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a[i][j] != 0 &&
                    (pi == m || std::abs(a[i][j]) < std::abs(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m)
            break;
        swap_rows(a, dec.u, t, pi);
        swap_cols(a, dec.v, t, pj);

        bool reduced = false;
        while (!reduced) {
            reduced = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (a[i][t] != 0) {
                    row_update(a, dec.u, i, t, -(a[i][t] / a[t][t]));
                    if (a[i][t] != 0) {
                        swap_rows(a, dec.u, t, i);
                        reduced = false;
                    }
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (a[t][j] != 0) {
                    col_update(a, dec.v, j, t, -(a[t][j] / a[t][t]));
                    if (a[t][j] != 0) {
                        swap_cols(a, dec.v, t, j);
                        reduced = false;
                    }
                }
        }

        // The pivot must divide the whole trailing block before moving on;
        // folding an offending row back in restarts the reduction at t.
        bool divides = true;
        for (std::size_t i = t + 1; i < m && divides; ++i)
            for (std::size_t j = t + 1; j < n && divides; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    row_update(a, dec.u, t, i, 1);
                    divides = false;
                }
        if (!divides)
            continue;

        if (a[t][t] < 0) {
            for (std::size_t j = 0; j < n; ++j)
                a[t][j] = -a[t][j];
            for (std::size_t j = 0; j < m; ++j)
                dec.u[t][j] = -dec.u[t][j];
        }
        ++t;
    }

    dec.rank = static_cast<int>(t);
    dec.s = std::move(a);
    return dec;
}

SolveResult snf_solve(const CongruenceSystem& sys) {
    validate_shape(sys);
    const long long m = sys.modulus;
    const std::size_t ne = sys.rows.size();
    const std::size_t nv = sys.variables.size();

    SolveResult result;
    result.space = 0;
    const auto dec = smith_normal_form(sys.rows);

    std::vector<long long> transformed(ne, 0);
    for (std::size_t i = 0; i < ne; ++i) {
        long long acc = 0;
        for (std::size_t j = 0; j < ne; ++j)
            acc = floor_mod(acc + floor_mod(dec.u[i][j], m) * floor_mod(sys.rhs[j], m), m);
        transformed[i] = acc;
    }

    std::vector<long long> y(nv, 0);
    for (std::size_t i = 0; i < ne; ++i) {
        if (i < static_cast<std::size_t>(dec.rank)) {
            const long long s = dec.s[i][i];
            const long long g = std::gcd(s, m);
            if (transformed[i] % g != 0) {
                result.status = SolveStatus::Unsat;
                return result;
            }
            const long long mg = m / g;
            if (mg > 1) {
                long long gg = 0;
                const long long inv = mod_inverse_part(floor_mod(s / g, mg), mg, gg);
                y[i] = floor_mod((transformed[i] / g) * floor_mod(inv, mg), mg);
            }
        } else if (transformed[i] != 0) {
            result.status = SolveStatus::Unsat;
            return result;
        }
    }

    std::vector<long long> x(nv, 0);
    for (std::size_t j = 0; j < nv; ++j) {
        long long acc = 0;
        for (std::size_t k = 0; k < nv; ++k)
            acc = floor_mod(acc + floor_mod(dec.v[j][k], m) * y[k], m);
        x[j] = acc;
    }
    if (!satisfies(sys, x))
        throw Error("internal: Smith-form witness failed validation");

    result.status = SolveStatus::Sat;
    result.witness = std::move(x);
    return result;
}

LrCondition solve_lr(long long coefficient, long long eta, long long modulus) {
    if (modulus < 2)
        throw Error("congruence modulus must be at least 2");
    LrCondition cond;
    cond.coefficient = coefficient;
    cond.eta = eta;
    cond.modulus = modulus;
    const long long coeff = floor_mod(coefficient, modulus);
    const long long rhs = floor_mod(eta, modulus);
    const long long g = std::gcd(coeff == 0 ? modulus : coeff, modulus);
    if (rhs % g != 0)
        return cond;
    cond.solvable = true;
    const long long mg = modulus / g;
    if (mg <= 1) {
        cond.witness_xi = 0;
    } else {
        long long gg = 0;
        const long long inv = mod_inverse_part(floor_mod(coeff / g, mg), mg, gg);
        cond.witness_xi = floor_mod((rhs / g) * floor_mod(inv, mg), mg);
    }
    return cond;
}

LrCondition lr_congruence(const ParadoxInstance& inst) {
    long long gap = 0;
    std::size_t a_count = 0, b_count = 0;
    for (const Composite& comp : inst.composites) {
        if (comp.family == 'A') {
            gap -= comp.gamma;
            ++a_count;
        } else {
            gap += comp.gamma;
            ++b_count;
        }
    }
    if (a_count == 0 || b_count == 0)
        throw Error("aggregate relation needs composites from both families");
    return solve_lr(inst.settings, gap, inst.dim);
}

CongruenceSystem mermin_system() {
    CongruenceSystem sys;
    sys.modulus = 2;
    for (int party = 1; party <= 3; ++party)
        for (const char* setting : {"x", "y"})
            sys.variables.push_back(VarKey{party, setting});
    sys.rows = {
        {1, 0, 0, 1, 0, 1},
        {0, 1, 1, 0, 0, 1},
        {0, 1, 0, 1, 1, 0},
        {1, 0, 1, 0, 1, 0},
    };
    sys.rhs = {0, 0, 0, 1};
    return sys;
}

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

long long parse_number(std::string_view s, int line_no) {
    try {
        std::size_t used = 0;
        const long long value = std::stoll(std::string(s), &used);
        if (used != s.size())
            throw std::invalid_argument("trailing junk");
        return value;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad number '" +
                         std::string(s) + "'");
    }
}

} // namespace

CongruenceSystem parse_system_text(const std::string& text) {
    CongruenceSystem sys;
    sys.modulus = 0;
    std::vector<std::pair<std::vector<std::pair<std::size_t, long long>>, long long>> rows;
    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;

    auto var_index = [&](int party, std::string setting) {
        const VarKey key{party, std::move(setting)};
        for (std::size_t j = 0; j < sys.variables.size(); ++j)
            if (sys.variables[j] == key)
                return j;
        sys.variables.push_back(key);
        return sys.variables.size() - 1;
    };

    while (std::getline(stream, raw)) {
        ++line_no;
        std::string_view line = strip(raw);
        if (line.empty() || line.front() == '#')
            continue;

        const auto eq_pos = line.find('=');
        if (eq_pos == std::string_view::npos)
            throw ParseError("line " + std::to_string(line_no) + ": missing '='");
        std::string_view left = strip(line.substr(0, eq_pos));
        std::string_view right = strip(line.substr(eq_pos + 1));

        const auto mod_pos = right.find("(mod");
        if (mod_pos == std::string_view::npos || right.back() != ')')
            throw ParseError("line " + std::to_string(line_no) +
                             ": right side must end with '(mod D)'");
        const long long modulus =
            parse_number(strip(right.substr(mod_pos + 4,
                                            right.size() - mod_pos - 5)),
                         line_no);
        if (modulus < 2)
            throw ParseError("line " + std::to_string(line_no) +
                             ": modulus must be at least 2");
        if (sys.modulus == 0)
            sys.modulus = modulus;
        else if (sys.modulus != modulus)
            throw ParseError("line " + std::to_string(line_no) +
                             ": modulus changed from " + std::to_string(sys.modulus));
        const long long rhs = parse_number(strip(right.substr(0, mod_pos)), line_no);

        std::vector<std::pair<std::size_t, long long>> terms;
        std::size_t start = 0;
        while (start <= left.size()) {
            auto plus = left.find('+', start);
            if (plus == std::string_view::npos)
                plus = left.size();
            std::string_view term = strip(left.substr(start, plus - start));
            start = plus + 1;
            if (term == "0" && terms.empty() && start > left.size())
                break;
            if (term.empty())
                throw ParseError("line " + std::to_string(line_no) + ": empty term");

            long long coeff = 1;
            const auto star = term.find('*');
            if (star != std::string_view::npos) {
                coeff = parse_number(strip(term.substr(0, star)), line_no);
                term = strip(term.substr(star + 1));
            }
            if (term.size() < 5 || term.substr(0, 2) != "x[" || term.back() != ']')
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected x[party,setting], got '" +
                                 std::string(term) + "'");
            const std::string_view inner = term.substr(2, term.size() - 3);
            const auto comma = inner.find(',');
            if (comma == std::string_view::npos)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected x[party,setting], got '" +
                                 std::string(term) + "'");
            const long long party = parse_number(strip(inner.substr(0, comma)), line_no);
            const std::string setting{strip(inner.substr(comma + 1))};
            if (party < 1 || setting.empty())
                throw ParseError("line " + std::to_string(line_no) +
                                 ": bad variable '" + std::string(term) + "'");
            terms.emplace_back(var_index(static_cast<int>(party), setting), coeff);
        }
        rows.emplace_back(std::move(terms), rhs);
    }

    if (rows.empty())
        throw ParseError("no equations found");
    for (auto& [terms, rhs] : rows) {
        std::vector<long long> row(sys.variables.size(), 0);
        for (const auto& [index, coeff] : terms)
            row[index] = floor_mod(row[index] + coeff, sys.modulus);
        sys.rows.push_back(std::move(row));
        sys.rhs.push_back(floor_mod(rhs, sys.modulus));
    }
    return sys;
}

std::string system_to_text(const CongruenceSystem& sys) {
    validate_shape(sys);
    std::ostringstream out;
    for (std::size_t e = 0; e < sys.rows.size(); ++e) {
        bool first = true;
        for (std::size_t j = 0; j < sys.variables.size(); ++j) {
            const long long coeff = floor_mod(sys.rows[e][j], sys.modulus);
            if (coeff == 0)
                continue;
            if (!first)
                out << " + ";
            if (coeff != 1)
                out << coeff << "*";
            out << sys.variables[j].label();
            first = false;
        }
        if (first)
            out << "0";
        out << " = " << floor_mod(sys.rhs[e], sys.modulus) << " (mod " << sys.modulus
            << ")\n";
    }
    return out.str();
}

} // namespace ghzkit
