#pragma once

#include <hypercolor/experiment.hpp>
#include <hypercolor/finisher.hpp>
#include <hypercolor/nibble.hpp>
#include <hypercolor/params.hpp>
#include <hypercolor/reduction.hpp>
#include <hypercolor/triangles.hpp>
#include <hypercolor/verify.hpp>

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace hypercolor
{
    using json = nlohmann::json;

    auto to_json(json & j, const DegreeProfile & p) -> void;
    auto to_json(json & j, const Edge & e) -> void;
    auto to_json(json & j, const TriangleWitness & t) -> void;
    auto to_json(json & j, const Verdict & v) -> void;
    auto to_json(json & j, const ReductionReport & r) -> void;
    auto to_json(json & j, const Parameters & p) -> void;
    auto to_json(json & j, const ConstraintCheck & c) -> void;
    auto to_json(json & j, const ConstraintReport & r) -> void;
    auto to_json(json & j, const Aggregate & a) -> void;
    auto to_json(json & j, const EnvelopeCheck & e) -> void;
    auto to_json(json & j, const IterationStats & s) -> void;
    auto to_json(json & j, const LllReport & r) -> void;
    auto to_json(json & j, const FinishResult & r) -> void;
    auto to_json(json & j, const ExperimentResult & r) -> void;
    auto to_json(json & j, const ExperimentSummary & s) -> void;

    /// Colors as integers with -1 for uncolored vertices.
    auto coloring_json(std::span<const Color> coloring) -> json;

    /// Accepts {"coloring": [...]} or a bare array; -1 means uncolored.
    auto coloring_from_json(const json & j) -> std::vector<Color>;

    /// Per-round arrays: colored counts, violation flags and the full stats records.
    auto trace_json(const std::vector<IterationStats> & trace) -> json;
}
