#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qreg/circuit.hpp"
#include "qreg/errors.hpp"

namespace qreg {

// Line-oriented circuit files:
//
//   qubits N
//   h 0
//   cx 0 controls: 1
//   swap 0,1
//   u 2 params: 1.5707963267948966,0,3.141592653589793
//
// '#' starts a comment. Gate names are lowercase; multi-controlled forms
// pick their name from the control count (cx/ccx/mcx, cz/cnz). Rendering is
// canonical and parse(render(c)) == c holds bit-exactly.

namespace detail {

inline std::string format_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct NameInfo {
    GateKind kind;
    int min_controls;
    int max_controls; // -1 for unbounded
    int params;
};

inline const NameInfo *lookup_name(std::string_view name) {
    static const std::pair<std::string_view, NameInfo> table[] = {
        {"i", {GateKind::I, 0, -1, 0}},
        {"x", {GateKind::X, 0, -1, 0}},
        {"y", {GateKind::Y, 0, -1, 0}},
        {"z", {GateKind::Z, 0, -1, 0}},
        {"h", {GateKind::H, 0, -1, 0}},
        {"sx", {GateKind::SX, 0, -1, 0}},
        {"sxdg", {GateKind::SXDG, 0, -1, 0}},
        {"s", {GateKind::S, 0, -1, 0}},
        {"sdg", {GateKind::SDG, 0, -1, 0}},
        {"t", {GateKind::T, 0, -1, 0}},
        {"p", {GateKind::P, 0, -1, 1}},
        {"u", {GateKind::U, 0, -1, 3}},
        {"swap", {GateKind::SWAP, 0, -1, 0}},
        {"cx", {GateKind::X, 1, 1, 0}},
        {"ccx", {GateKind::X, 2, 2, 0}},
        {"mcx", {GateKind::X, 1, -1, 0}},
        {"cz", {GateKind::Z, 1, 1, 0}},
        {"cnz", {GateKind::Z, 1, -1, 0}},
    };
    for (const auto &[key, info] : table) {
        if (key == name) {
            return &info;
        }
    }
    return nullptr;
}

inline std::string canonical_name(const GateApplication &step) {
    const std::size_t nc = step.controls.size();
    switch (step.gate.kind) {
    case GateKind::I:
        return "i";
    case GateKind::X:
        if (nc == 1) {
            return "cx";
        }
        if (nc == 2) {
            return "ccx";
        }
        if (nc >= 3) {
            return "mcx";
        }
        return "x";
    case GateKind::Y:
        return "y";
    case GateKind::Z:
        if (nc == 1) {
            return "cz";
        }
        if (nc >= 2) {
            return "cnz";
        }
        return "z";
    case GateKind::H:
        return "h";
    case GateKind::SX:
        return "sx";
    case GateKind::SXDG:
        return "sxdg";
    case GateKind::S:
        return "s";
    case GateKind::SDG:
        return "sdg";
    case GateKind::T:
        return "t";
    case GateKind::P:
        return "p";
    case GateKind::U:
        return "u";
    case GateKind::SWAP:
        return "swap";
    }
    throw InvalidArgumentError("unknown gate kind");
}

inline std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

inline std::vector<std::string> split_commas(const std::string &s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

inline int parse_index(const std::string &tok, int line) {
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line, "expected a qubit index, got '" + tok + "'");
    }
    return value;
}

inline double parse_param(const std::string &tok, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) {
            throw std::invalid_argument(tok);
        }
        return v;
    } catch (const std::exception &) {
        throw ParseError(line, "expected a numeric parameter, got '" + tok + "'");
    }
}

} // namespace detail

inline std::string render_circuit(const Circuit &c) {
    std::ostringstream out;
    out << "qubits " << c.num_qubits() << "\n";
    for (const GateApplication &step : c.steps()) {
        out << detail::canonical_name(step) << " ";
        for (std::size_t i = 0; i < step.targets.size(); ++i) {
            out << (i ? "," : "") << step.targets[i];
        }
        if (!step.controls.empty()) {
            out << " controls: ";
            for (std::size_t i = 0; i < step.controls.size(); ++i) {
                out << (i ? "," : "") << step.controls[i];
            }
        }
        if (step.gate.kind == GateKind::P) {
            out << " params: " << detail::format_param(step.gate.theta);
        } else if (step.gate.kind == GateKind::U) {
            out << " params: " << detail::format_param(step.gate.theta) << ","
                << detail::format_param(step.gate.phi) << ","
                << detail::format_param(step.gate.lambda);
        }
        out << "\n";
    }
    return out.str();
}

inline Circuit parse_circuit(const std::string &text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    int num_qubits = -1;
    std::vector<std::pair<int, std::string>> gate_lines;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = detail::trim(
            hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        if (num_qubits < 0) {
            std::istringstream hdr(line);
            std::string word;
            hdr >> word;
            int q = 0;
            if (word != "qubits" || !(hdr >> q) || !(hdr >> std::ws).eof()) {
                throw ParseError(line_no, "expected header 'qubits N'");
            }
            if (q < 1) {
                throw ParseError(line_no, "qubit count must be positive");
            }
            num_qubits = q;
            continue;
        }
        gate_lines.emplace_back(line_no, line);
    }
    if (num_qubits < 0) {
        throw ParseError(line_no, "missing 'qubits N' header");
    }
    Circuit c(num_qubits);
    for (const auto &[ln, line] : gate_lines) {
        std::string name;
        std::string rest;
        {
            const auto sp = line.find_first_of(" \t");
            if (sp == std::string::npos) {
                throw ParseError(ln, "gate line needs a target");
            }
            name = line.substr(0, sp);
            rest = detail::trim(line.substr(sp));
        }
        const detail::NameInfo *info = detail::lookup_name(name);
        if (!info) {
            throw ParseError(ln, "unknown gate name '" + name + "'");
        }
        std::string targets_part = rest;
        std::string controls_part;
        std::string params_part;
        const auto cpos = rest.find("controls:");
        const auto ppos = rest.find("params:");
        if (cpos != std::string::npos) {
            targets_part = detail::trim(rest.substr(0, cpos));
            const auto cend = ppos == std::string::npos ? rest.size() : ppos;
            controls_part = detail::trim(rest.substr(cpos + 9, cend - cpos - 9));
        }
        if (ppos != std::string::npos) {
            if (cpos == std::string::npos) {
                targets_part = detail::trim(rest.substr(0, ppos));
            } else if (ppos < cpos) {
                throw ParseError(ln, "params must come after controls");
            }
            params_part = detail::trim(rest.substr(ppos + 7));
        }
        if (targets_part.empty()) {
            throw ParseError(ln, "gate line needs a target");
        }

        GateApplication step;
        step.gate.kind = info->kind;
        for (const std::string &tok : detail::split_commas(targets_part)) {
            step.targets.push_back(detail::parse_index(tok, ln));
        }
        const int expected_targets = info->kind == GateKind::SWAP ? 2 : 1;
        if (static_cast<int>(step.targets.size()) != expected_targets) {
            throw ParseError(ln, "'" + name + "' takes " +
                                     std::to_string(expected_targets) +
                                     " target(s)");
        }
        if (!controls_part.empty()) {
            for (const std::string &tok : detail::split_commas(controls_part)) {
                step.controls.push_back(detail::parse_index(tok, ln));
            }
        }
        const int nc = static_cast<int>(step.controls.size());
        if (nc < info->min_controls ||
            (info->max_controls >= 0 && nc > info->max_controls)) {
            throw ParseError(ln, "'" + name + "' has the wrong control count");
        }
        if (info->params > 0) {
            if (params_part.empty()) {
                throw ParseError(ln, "'" + name + "' needs params");
            }
            const auto toks = detail::split_commas(params_part);
            if (static_cast<int>(toks.size()) != info->params) {
                throw ParseError(ln, "'" + name + "' takes " +
                                         std::to_string(info->params) +
                                         " parameter(s)");
            }
            if (info->kind == GateKind::P) {
                step.gate.theta = detail::parse_param(toks[0], ln);
            } else {
                step.gate.theta = detail::parse_param(toks[0], ln);
                step.gate.phi = detail::parse_param(toks[1], ln);
                step.gate.lambda = detail::parse_param(toks[2], ln);
            }
        } else if (!params_part.empty()) {
            throw ParseError(ln, "'" + name + "' takes no params");
        }
        try {
            c.add(std::move(step));
        } catch (const InvalidArgumentError &e) {
            throw ParseError(ln, e.what());
        }
    }
    return c;
}

inline Circuit parse_circuit_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgumentError("cannot open circuit file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_circuit(buf.str());
}

} // namespace qreg
