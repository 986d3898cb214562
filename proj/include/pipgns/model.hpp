#pragma once

#include "pipgns/bweight.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pipgns {

/// Everything a model file describes: algebra, B-weight, named elements and an optional functional.
struct Model {
    std::string name;
    BWeight weight;
    std::map<std::string, Sequence> elements;
    std::optional<FunctionalData> functional;
    std::vector<std::string> queries;

    const PartialStarAlgebra& algebra() const { return weight.algebra; }
    const Ambient& ambient() const { return weight.ambient(); }
};

/// Probe bound for phi quantifiers: covers every correction index that occurs, plus slack.
inline long probe_bound_for(const std::vector<const Subspace*>& spaces, const std::map<std::string, Sequence>& elements) {
    long m = 0;
    for (auto* s : spaces) m = std::max(m, s->max_index());
    for (const auto& [k, v] : elements) m = std::max(m, v.max_index());
    return std::max<long>(m + 2, 6);
}

}  // namespace pipgns
