#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qreg/errors.hpp"

namespace qreg {

/// Machine- and human-readable result of one CLI command. Everything except
/// the timing section is deterministic for a given seed, so two runs with
/// the same inputs compare byte-identical once timing lines are stripped.
struct RunReport {
    std::string command;
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    std::uint64_t num_qubits = 0;
    std::uint64_t num_gates = 0;
    std::map<std::string, std::uint64_t> histogram;
    std::optional<std::map<std::string, double>> exact_probabilities;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
    std::vector<std::pair<std::string, double>> timings; // phase -> seconds

    void validate() const {
        std::uint64_t total = 0;
        for (const auto &[key, count] : histogram) {
            total += count;
        }
        if (total != shots) {
            throw InvalidStateError("histogram counts do not sum to shots");
        }
        if (exact_probabilities) {
            double p = 0.0;
            for (const auto &[key, prob] : *exact_probabilities) {
                p += prob;
            }
            if (std::abs(p - 1.0) > 1e-9) {
                throw InvalidStateError("exact probabilities do not sum to 1");
            }
        }
    }

    std::string to_ascii() const {
        std::ostringstream out;
        out << "command: " << command << "\n";
        out << "seed: " << seed << "\n";
        out << "shots: " << shots << "\n";
        out << "qubits: " << num_qubits << "\n";
        out << "gates: " << num_gates << "\n";
        for (const auto &[key, value] : extra.items()) {
            out << key << ": " << value.dump() << "\n";
        }
        if (!histogram.empty()) {
            std::uint64_t peak = 1;
            for (const auto &[bits, count] : histogram) {
                peak = std::max(peak, count);
            }
            out << "histogram:\n";
            for (const auto &[bits, count] : histogram) {
                const int bar = static_cast<int>(
                    (static_cast<double>(count) * 40.0) /
                    static_cast<double>(peak));
                out << "  " << bits << " " << count << " "
                    << std::string(static_cast<std::size_t>(bar), '#') << "\n";
            }
        }
        if (exact_probabilities) {
            out << "exact_probabilities:\n";
            for (const auto &[bits, p] : *exact_probabilities) {
                char buf[40];
                std::snprintf(buf, sizeof(buf), "%.12g", p);
                out << "  " << bits << " " << buf << "\n";
            }
        }
        for (const auto &[phase, seconds] : timings) {
            out << "timing " << phase << ": " << seconds << " s\n";
        }
        return out.str();
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["seed"] = seed;
        j["shots"] = shots;
        j["qubits"] = num_qubits;
        j["gates"] = num_gates;
        for (const auto &[key, value] : extra.items()) {
            j[key] = value;
        }
        j["histogram"] = histogram;
        if (exact_probabilities) {
            j["exact_probabilities"] = *exact_probabilities;
        }
        nlohmann::ordered_json t = nlohmann::ordered_json::object();
        for (const auto &[phase, seconds] : timings) {
            t[phase] = seconds;
        }
        j["timing"] = t;
        return j;
    }
};

} // namespace qreg
