#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qreg/bits.hpp"
#include "qreg/circuit.hpp"
#include "qreg/errors.hpp"
#include "qreg/grover.hpp"
#include "qreg/rng.hpp"
#include "qreg/state_vector.hpp"

namespace qreg {

/// Exactly-1 3-SAT instance: clauses of three signed literals. A positive
/// integer is a variable index (1-based), a negative integer its negation.
/// An assignment satisfies the formula iff every clause has exactly one
/// true literal.
struct Formula {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;
};

namespace detail {

inline void check_clause(const std::array<int, 3> &clause, int num_vars,
                         int line) {
    for (int lit : clause) {
        if (lit == 0) {
            throw ParseError(line, "literal 0 is not allowed");
        }
        const int var = lit < 0 ? -lit : lit;
        if (var > num_vars) {
            throw ParseError(line, "variable x" + std::to_string(var) +
                                       " is out of range");
        }
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (std::abs(clause[i]) == std::abs(clause[j])) {
                throw ParseError(line, "clause repeats variable x" +
                                           std::to_string(std::abs(clause[i])));
            }
        }
    }
}

inline Formula parse_bracket_formula(const std::string &text) {
    Formula f;
    std::size_t pos = 0;
    int line = 1;
    auto skip_ws = [&] {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos]))) {
            if (text[pos] == '\n') {
                ++line;
            }
            ++pos;
        }
    };
    auto expect = [&](char ch) {
        skip_ws();
        if (pos >= text.size() || text[pos] != ch) {
            throw ParseError(line, std::string("expected '") + ch + "'");
        }
        ++pos;
    };
    auto parse_int = [&] {
        skip_ws();
        const std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            ++pos;
        }
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start])))) {
            throw ParseError(line, "expected a literal");
        }
        return std::stoi(text.substr(start, pos - start));
    };
    expect('[');
    skip_ws();
    while (true) {
        expect('[');
        std::array<int, 3> clause{};
        clause[0] = parse_int();
        expect(',');
        clause[1] = parse_int();
        expect(',');
        clause[2] = parse_int();
        expect(']');
        f.clauses.push_back(clause);
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        break;
    }
    expect(']');
    skip_ws();
    if (pos != text.size()) {
        throw ParseError(line, "trailing characters after formula");
    }
    for (const auto &clause : f.clauses) {
        for (int lit : clause) {
            f.num_vars = std::max(f.num_vars, std::abs(lit));
        }
    }
    for (const auto &clause : f.clauses) {
        check_clause(clause, f.num_vars, 1);
    }
    return f;
}

inline Formula parse_dimacs_formula(const std::string &text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    Formula f;
    int declared_clauses = -1;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream ls(raw);
        std::string first;
        if (!(ls >> first) || first == "c" || first[0] == '#') {
            continue;
        }
        if (first == "p") {
            std::string kind;
            if (!(ls >> kind >> f.num_vars >> declared_clauses) ||
                kind != "exactly1" || f.num_vars < 1 || declared_clauses < 0) {
                throw ParseError(line_no, "expected header 'p exactly1 N M'");
            }
            continue;
        }
        if (f.num_vars == 0) {
            throw ParseError(line_no, "clause before 'p exactly1 N M' header");
        }
        std::array<int, 3> clause{};
        clause[0] = std::stoi(first);
        int terminator = 1;
        if (!(ls >> clause[1] >> clause[2] >> terminator) || terminator != 0) {
            throw ParseError(line_no,
                             "clause needs three literals and a 0 terminator");
        }
        check_clause(clause, f.num_vars, line_no);
        f.clauses.push_back(clause);
    }
    if (f.num_vars == 0) {
        throw ParseError(line_no, "missing 'p exactly1 N M' header");
    }
    if (declared_clauses >= 0 &&
        declared_clauses != static_cast<int>(f.clauses.size())) {
        throw ParseError(line_no, "clause count does not match the header");
    }
    return f;
}

} // namespace detail

/// Accepts either the bracketed list-of-lists syntax
/// [[1,2,-3],[-1,-2,-3],[-1,2,3]] or a DIMACS-like syntax with a
/// 'p exactly1 N M' header and 0-terminated clause lines.
inline Formula parse_formula(const std::string &text) {
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            continue;
        }
        if (ch == '[') {
            return detail::parse_bracket_formula(text);
        }
        break;
    }
    Formula f = detail::parse_dimacs_formula(text);
    if (f.clauses.empty()) {
        throw ParseError(1, "formula has no clauses");
    }
    return f;
}

inline Formula parse_formula_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgumentError("cannot open formula file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_formula(buf.str());
}

/// Brute-force evaluation: bit i-1 of `assignment` is the value of x_i.
/// This is the oracle every gate-level construction is checked against.
inline bool classical_eval(const Formula &f, std::uint64_t assignment) {
    for (const auto &clause : f.clauses) {
        int true_literals = 0;
        for (int lit : clause) {
            const int var = lit < 0 ? -lit : lit;
            const int value = bit_of(assignment, var - 1);
            true_literals += lit > 0 ? value : 1 - value;
        }
        if (true_literals != 1) {
            return false;
        }
    }
    return true;
}

inline std::uint64_t count_solutions(const Formula &f) {
    if (f.num_vars > 20) {
        throw CapacityError("solution counting is brute force; n <= 20 only");
    }
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.num_vars); ++a) {
        count += classical_eval(f, a) ? 1 : 0;
    }
    return count;
}

/// Register plan for the compiled oracle. Qubit 0 is the search auxiliary
/// (the oracle output), qubits 1..n the input variables, then one ancilla
/// per clause, then scratch for the multi-controlled NOT chains.
struct OracleLayout {
    int num_vars = 0;
    int num_clauses = 0;
    int num_scratch = 0;

    static OracleLayout for_formula(const Formula &f) {
        OracleLayout l;
        l.num_vars = f.num_vars;
        l.num_clauses = static_cast<int>(f.clauses.size());
        // Every clause detector uses a 3-control NOT (1 scratch qubit); the
        // final conjunction over m clause ancillas needs m-2 for m >= 3.
        l.num_scratch = std::max(1, l.num_clauses - 2);
        if (l.total_qubits() > StateVector::max_qubits()) {
            throw CapacityError("oracle layout exceeds register capacity");
        }
        return l;
    }

    int output_qubit() const { return 0; }
    int input_qubit(int i) const { return 1 + i; } // x_{i+1}
    int clause_qubit(int k) const { return 1 + num_vars + k; }
    int scratch_qubit(int i) const { return 1 + num_vars + num_clauses + i; }
    int total_qubits() const { return 1 + num_vars + num_clauses + num_scratch; }

    std::vector<int> scratch_qubits() const {
        std::vector<int> v;
        for (int i = 0; i < num_scratch; ++i) {
            v.push_back(scratch_qubit(i));
        }
        return v;
    }
};

/// Detector for one clause: X gates align negated literals, three CNOTs
/// accumulate the literal parity into the clause ancilla, a triply
/// controlled NOT adds the all-true term, and the X gates restore the
/// inputs. The ancilla ends 1 iff exactly one literal is true.
inline Circuit build_clause_circuit(const std::array<int, 3> &clause,
                                    const OracleLayout &layout, int k) {
    if (k < 0 || k >= layout.num_clauses) {
        throw InvalidArgumentError("clause index out of range");
    }
    Circuit c(layout.total_qubits());
    const int aux = layout.clause_qubit(k);
    std::vector<int> literal_qubits;
    for (int lit : clause) {
        literal_qubits.push_back(layout.input_qubit(std::abs(lit) - 1));
    }
    auto flip_negated = [&] {
        for (int lit : clause) {
            if (lit < 0) {
                c.x(layout.input_qubit(-lit - 1));
            }
        }
    };
    flip_negated();
    for (int q : literal_qubits) {
        c.cx(q, aux);
    }
    c.append(mcx_with_ancilla(literal_qubits, aux, layout.scratch_qubits(),
                              layout.total_qubits()));
    flip_negated();
    return c;
}

/// The full U_f: clause detectors, a multi-controlled NOT from all clause
/// ancillas onto the output qubit, then the detectors again to uncompute.
/// On |x>|0...0> the circuit yields |x>|f(x)>|0...0| and is self-inverse.
inline std::pair<Circuit, OracleLayout> build_sat_oracle(const Formula &f) {
    const OracleLayout layout = OracleLayout::for_formula(f);
    Circuit c(layout.total_qubits());
    Circuit detectors(layout.total_qubits());
    for (int k = 0; k < layout.num_clauses; ++k) {
        detectors.append(build_clause_circuit(f.clauses[k], layout, k));
    }
    std::vector<int> clause_qubits;
    for (int k = 0; k < layout.num_clauses; ++k) {
        clause_qubits.push_back(layout.clause_qubit(k));
    }
    c.append(detectors);
    c.append(mcx_with_ancilla(clause_qubits, layout.output_qubit(),
                              layout.scratch_qubits(), layout.total_qubits()));
    c.append(detectors);
    return {std::move(c), layout};
}

struct SatSolveResult {
    bool satisfiable = false;
    std::uint64_t num_solutions = 0;
    int iterations = 0;
    double predicted_success = 0.0;
    double success_probability = 0.0;
    std::map<std::string, std::uint64_t> histogram; // input register readouts
    std::map<std::string, double> exact_probabilities;
    std::string assignment_register_order; // x_n ... x_1
    std::string assignment_x1_first;       // x_1 ... x_n
};

/// Grover search over the gate-compiled oracle: initialization on the
/// output + input qubits, k cycles of oracle followed by the H / D / H
/// inversion circuit on the inputs, then an exact readout of the input
/// register. The solution count M is brute-forced to pick the schedule
/// unless an iteration count is supplied.
inline SatSolveResult grover_sat_solve(const Formula &f, std::uint64_t shots,
                                       Rng &rng,
                                       std::optional<int> iterations
                                       = std::nullopt) {
    SatSolveResult result;
    result.num_solutions = count_solutions(f);
    result.satisfiable = result.num_solutions > 0;
    if (!result.satisfiable) {
        return result;
    }
    auto [oracle, layout] = build_sat_oracle(f);
    const int n = layout.num_vars;

    const GroverSchedule schedule = grover_schedule(n, result.num_solutions);
    result.iterations = iterations.value_or(schedule.k_opt);
    if (result.iterations < 0) {
        throw InvalidArgumentError("iteration count must be >= 0");
    }
    result.predicted_success = schedule.predicted_success;

    StateVector state = StateVector::zero_state(layout.total_qubits());
    apply(state, {Gate::x(), {layout.output_qubit()}, {}});
    apply(state, {Gate::h(), {layout.output_qubit()}, {}});
    for (int i = 0; i < n; ++i) {
        apply(state, {Gate::h(), {layout.input_qubit(i)}, {}});
    }
    Circuit inversion(layout.total_qubits());
    {
        std::vector<int> input_map;
        for (int i = 0; i < n; ++i) {
            input_map.push_back(layout.input_qubit(i));
        }
        Circuit d = build_d_circuit(n);
        for (int i = 0; i < n; ++i) {
            inversion.h(layout.input_qubit(i));
        }
        inversion.append(d, input_map);
        for (int i = 0; i < n; ++i) {
            inversion.h(layout.input_qubit(i));
        }
    }
    for (int k = 0; k < result.iterations; ++k) {
        state = run(oracle, std::move(state));
        state = run(inversion, std::move(state));
    }

    const std::vector<double> p = first_register_distribution(state, n);
    std::vector<double> cum(p.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        acc += p[j];
        cum[j] = acc;
    }
    std::uint64_t best = 0;
    for (std::uint64_t j = 0; j < p.size(); ++j) {
        result.exact_probabilities[to_bit_string(j, n)] = p[j];
        if (p[j] > p[best]) {
            best = j;
        }
        if (classical_eval(f, j)) {
            result.success_probability += p[j];
        }
    }
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::uint64_t j = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(it - cum.begin(),
                                     static_cast<std::ptrdiff_t>(p.size()) - 1));
        ++result.histogram[to_bit_string(j, n)];
    }
    // The register-order string reads x_n first; the paper's own "101" is a
    // palindrome, so both renderings are reported.
    result.assignment_register_order = to_bit_string(best, n);
    result.assignment_x1_first = result.assignment_register_order;
    std::reverse(result.assignment_x1_first.begin(),
                 result.assignment_x1_first.end());
    return result;
}

} // namespace qreg
