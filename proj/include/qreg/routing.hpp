#pragma once

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qreg/circuit.hpp"
#include "qreg/errors.hpp"

namespace qreg {

/// Device connectivity: which qubit pairs may carry a two-qubit gate.
struct CouplingGraph {
    int num_qubits = 0;
    std::set<std::pair<int, int>> edges; // stored with first < second

    CouplingGraph(int num_qubits_, const std::vector<std::pair<int, int>> &list)
        : num_qubits(num_qubits_) {
        if (num_qubits < 1) {
            throw InvalidArgumentError("coupling graph needs at least one qubit");
        }
        for (auto [a, b] : list) {
            if (a < 0 || b < 0 || a >= num_qubits || b >= num_qubits || a == b) {
                throw InvalidArgumentError("bad coupling edge");
            }
            edges.emplace(std::min(a, b), std::max(a, b));
        }
    }

    static CouplingGraph all_to_all(int num_qubits) {
        std::vector<std::pair<int, int>> list;
        for (int a = 0; a < num_qubits; ++a) {
            for (int b = a + 1; b < num_qubits; ++b) {
                list.emplace_back(a, b);
            }
        }
        return CouplingGraph(num_qubits, list);
    }

    static CouplingGraph line(int num_qubits) {
        std::vector<std::pair<int, int>> list;
        for (int a = 0; a + 1 < num_qubits; ++a) {
            list.emplace_back(a, a + 1);
        }
        return CouplingGraph(num_qubits, list);
    }

    bool has_edge(int a, int b) const {
        return edges.count({std::min(a, b), std::max(a, b)}) > 0;
    }

    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        for (auto [a, b] : edges) {
            if (a == v) {
                out.push_back(b);
            } else if (b == v) {
                out.push_back(a);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool connected() const {
        std::vector<bool> seen(static_cast<std::size_t>(num_qubits), false);
        std::deque<int> frontier{0};
        seen[0] = true;
        int count = 1;
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop_front();
            for (int w : neighbors(v)) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    ++count;
                    frontier.push_back(w);
                }
            }
        }
        return count == num_qubits;
    }

    /// Shortest path from src to dst; among equal-length paths the
    /// lexicographically smallest, so routing is deterministic. When
    /// `allowed` is given, the path stays inside that vertex set.
    std::vector<int> shortest_path(int src, int dst,
                                   const std::vector<bool> *allowed
                                   = nullptr) const {
        auto ok = [&](int v) {
            return !allowed || (*allowed)[static_cast<std::size_t>(v)];
        };
        if (!ok(src) || !ok(dst)) {
            throw InvalidArgumentError("no path between routed qubits");
        }
        std::vector<int> dist(static_cast<std::size_t>(num_qubits), -1);
        std::deque<int> frontier{dst};
        dist[static_cast<std::size_t>(dst)] = 0;
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop_front();
            for (int w : neighbors(v)) {
                if (ok(w) && dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] =
                        dist[static_cast<std::size_t>(v)] + 1;
                    frontier.push_back(w);
                }
            }
        }
        if (dist[static_cast<std::size_t>(src)] < 0) {
            throw InvalidArgumentError("no path between routed qubits");
        }
        std::vector<int> path{src};
        int cur = src;
        while (cur != dst) {
            for (int w : neighbors(cur)) { // neighbors() is sorted
                if (ok(w) && dist[static_cast<std::size_t>(w)] ==
                                 dist[static_cast<std::size_t>(cur)] - 1) {
                    path.push_back(w);
                    cur = w;
                    break;
                }
            }
        }
        return path;
    }

    /// Breadth-first discovery order from qubit 0. Every prefix of this
    /// order induces a connected subgraph.
    std::vector<int> bfs_order() const {
        std::vector<bool> seen(static_cast<std::size_t>(num_qubits), false);
        std::vector<int> order;
        std::deque<int> frontier{0};
        seen[0] = true;
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop_front();
            order.push_back(v);
            for (int w : neighbors(v)) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    frontier.push_back(w);
                }
            }
        }
        return order;
    }
};

inline CouplingGraph parse_coupling_file(const std::string &path,
                                         int num_qubits) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgumentError("cannot open coupling file: " + path);
    }
    std::vector<std::pair<int, int>> list;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        std::istringstream ls(line);
        int a = 0;
        int b = 0;
        if (!(ls >> a)) {
            continue;
        }
        if (!(ls >> b)) {
            throw ParseError(line_no, "coupling edge needs two qubit indices");
        }
        list.emplace_back(a, b);
    }
    return CouplingGraph(num_qubits, list);
}

struct RoutingResult {
    Circuit circuit;
    /// final_layout[logical] = physical position of that qubit at circuit end.
    std::vector<int> final_layout;
};

/// Rewrites a circuit of 1- and 2-qubit gates so every 2-qubit gate acts on
/// a coupled pair, inserting SWAPs along shortest paths. The output computes
/// the input's unitary up to the reported final qubit permutation; pass
/// undo_layout to append SWAPs that restore the identity layout.
inline RoutingResult route(const Circuit &c, const CouplingGraph &g,
                           bool undo_layout = false) {
    if (g.num_qubits != c.num_qubits()) {
        throw InvalidArgumentError("route: qubit count mismatch");
    }
    if (!g.connected()) {
        throw InvalidArgumentError("route: coupling graph must be connected");
    }
    std::vector<int> layout(static_cast<std::size_t>(c.num_qubits()));
    std::vector<int> occupant(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) {
        layout[i] = static_cast<int>(i);
        occupant[i] = static_cast<int>(i);
    }
    Circuit out(c.num_qubits());
    auto emit_swap = [&](int pa, int pb) {
        out.swap(std::min(pa, pb), std::max(pa, pb));
        const int la = occupant[static_cast<std::size_t>(pa)];
        const int lb = occupant[static_cast<std::size_t>(pb)];
        std::swap(occupant[static_cast<std::size_t>(pa)],
                  occupant[static_cast<std::size_t>(pb)]);
        layout[static_cast<std::size_t>(la)] = pb;
        layout[static_cast<std::size_t>(lb)] = pa;
    };
    // Moves whatever sits at physical src adjacent to dst (or all the way
    // onto dst when requested), swapping along the shortest path.
    auto walk = [&](int src, int dst, bool onto,
                    const std::vector<bool> *allowed = nullptr) {
        const std::vector<int> path = g.shortest_path(src, dst, allowed);
        const std::size_t stop = onto ? path.size() - 1 : path.size() - 2;
        for (std::size_t i = 0; i < stop; ++i) {
            emit_swap(path[i], path[i + 1]);
        }
    };
    for (const GateApplication &step : c.steps()) {
        std::vector<int> qubits = step.targets;
        qubits.insert(qubits.end(), step.controls.begin(), step.controls.end());
        if (qubits.size() > 2) {
            throw InvalidArgumentError(
                "route: only 1- and 2-qubit gates are routable; decompose first");
        }
        GateApplication mapped = step;
        if (qubits.size() == 2) {
            int pa = layout[static_cast<std::size_t>(qubits[0])];
            int pb = layout[static_cast<std::size_t>(qubits[1])];
            if (!g.has_edge(pa, pb)) {
                // The qubit at the lower physical index moves toward the other.
                if (pa <= pb) {
                    walk(pa, pb, false);
                } else {
                    walk(pb, pa, false);
                }
            }
        }
        for (int &q : mapped.targets) {
            q = layout[static_cast<std::size_t>(q)];
        }
        for (int &q : mapped.controls) {
            q = layout[static_cast<std::size_t>(q)];
        }
        out.add(std::move(mapped));
    }
    if (undo_layout) {
        // Settle positions leaves-first in reverse breadth-first order, so
        // each restoring walk stays inside the still-unsettled (connected)
        // prefix and never disturbs a settled qubit.
        std::vector<int> order = g.bfs_order();
        std::vector<bool> remaining(layout.size(), true);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int logical = *it;
            const int pos = layout[static_cast<std::size_t>(logical)];
            if (pos != logical) {
                walk(pos, logical, true, &remaining);
            }
            remaining[static_cast<std::size_t>(logical)] = false;
        }
    }
    return {std::move(out), std::move(layout)};
}

} // namespace qreg
