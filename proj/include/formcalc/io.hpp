#pragma once

#include <string>
#include <string_view>

#include "formcalc/cohomology.hpp"
#include "formcalc/integration.hpp"
#include "formcalc/smooth_map.hpp"

namespace formcalc {

/// Chain document:
///
///   { "ambient": N,
///     "cells": [ { "weight": 1, "box": [[0, "2*pi"]], "map": ["cos(t)", "sin(t)"],
///                  "orientation": 1, "params": ["t"] } ] }
///
/// `weight`, `orientation` and `params` are optional. Bounds may be numbers or
/// constant expressions in pi and e. Without `params` the parameters are named
/// t (one), u, v (two) or u, v, w (three), and p1, p2, ... beyond that.
Chain chain_from_json(std::string_view text);
Chain load_chain(const std::string& path);

/// { "vertices": V, "simplices": [[0, 1], [1, 2], ...] }
Nerve nerve_from_json(std::string_view text);
Nerve load_nerve(const std::string& path);

/// { "slots": [0, 1, 2, 2, null, 0], "ranks": [null, null, null, null, null] }
/// `ranks` may be omitted; its length must be one less than `slots`.
ExactSequenceProblem problem_from_json(std::string_view text);
ExactSequenceProblem load_problem(const std::string& path);

/// A map literal `map(x,y,z) = -x; -y; -z`, either bare or as { "map": "..." }.
SmoothMap map_from_text(std::string_view text);
SmoothMap load_map(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace formcalc
