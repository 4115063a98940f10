#include "doctest.h"

#include <cmath>
#include <numbers>
#include <string>

#include "formcalc/error.hpp"
#include "formcalc/io.hpp"
#include "formcalc/parser.hpp"

using namespace formcalc;

namespace {

const std::string kData = FORMCALC_TEST_DATA;

}  // namespace

TEST_CASE("chain documents") {
  const Chain circle = load_chain(kData + "/circle.json");
  REQUIRE(circle.terms().size() == 1);
  CHECK(circle.dimension() == 1);
  CHECK(circle.ambient() == 2);
  CHECK(circle.terms()[0].cell.box()[0].hi == doctest::Approx(2 * std::numbers::pi).epsilon(1e-15));
  CHECK(integrate_chain(parse_form("x*dy - y*dx", 2), circle) == doctest::Approx(2 * std::numbers::pi));

  const Chain disk = load_chain(kData + "/disk.json");
  CHECK(disk.dimension() == 2);
  CHECK(integrate_chain(parse_form("dx/\\dy", 2), disk) == doctest::Approx(std::numbers::pi));

  const Chain weighted = chain_from_json(R"({"ambient": 1, "cells": [
      {"weight": 2, "box": [[0, 1]], "map": ["s"], "params": ["s"]},
      {"box": [["e", "e + 1"]], "map": ["t"], "orientation": -1}]})");
  REQUIRE(weighted.terms().size() == 2);
  CHECK(weighted.terms()[0].weight == 2);
  CHECK(weighted.terms()[1].cell.orientation() == -1);
  CHECK(integrate_chain(parse_form("dx", 1), weighted) == doctest::Approx(1.0));

  const Chain defaults = chain_from_json(R"({"ambient": 3, "cells": [{"box": [[0, 1], [0, 1], [0, 1]], "map": ["u", "v", "w"]}]})");
  CHECK(integrate_chain(parse_form("dx/\\dy/\\dz", 3), defaults) == doctest::Approx(1.0));
}

TEST_CASE("malformed chain documents") {
  CHECK_THROWS_AS(load_chain(kData + "/broken.json"), InputError);
  CHECK_THROWS_AS(load_chain(kData + "/missing.json"), InputError);
  CHECK_THROWS_AS(chain_from_json(R"({"cells": []})"), InputError);
  CHECK_THROWS_AS(chain_from_json(R"({"ambient": 2, "cells": {}})"), InputError);
  CHECK_THROWS_AS(chain_from_json(R"({"ambient": 2, "cells": [{"box": [[0]], "map": ["t", "t"]}]})"), InputError);
  CHECK_THROWS_AS(chain_from_json(R"({"ambient": 2, "cells": [{"box": [[0, 1]], "map": ["t"]}]})"), InputError);
  CHECK_THROWS_AS(chain_from_json(R"({"ambient": 2, "cells": [{"box": [[0, 1]], "map": ["t", 3]}]})"), InputError);
  CHECK_THROWS_AS(chain_from_json(R"({"ambient": 2, "cells": [{"box": [[0, "x"]], "map": ["t", "t"]}]})"), InputError);
  CHECK_THROWS_AS(chain_from_json(R"({"ambient": 1, "cells": [{"box": [[0, 1]], "map": ["t"], "params": ["a", "b"]}]})"), InputError);
  CHECK_THROWS_AS(chain_from_json(R"({"ambient": 1, "cells": [{"box": [[0, 1]], "map": ["t +"]}]})"), ParseError);
}

TEST_CASE("nerve documents") {
  const Nerve circle = load_nerve(kData + "/circle_nerve.json");
  CHECK(circle.vertex_count() == 3);
  CHECK(cech_cohomology(circle) == std::vector<long>{1, 1});
  CHECK_THROWS_AS(nerve_from_json(R"({"vertices": 2, "simplices": [[0, 5]]})"), InputError);
  CHECK_THROWS_AS(nerve_from_json(R"({"vertices": 2, "simplices": [0, 1]})"), InputError);
  CHECK_THROWS_AS(nerve_from_json(R"({"vertices": 2.5, "simplices": []})"), InputError);
  CHECK_THROWS_AS(nerve_from_json(R"({"simplices": []})"), InputError);
}

TEST_CASE("exact sequence documents") {
  const ExactSequenceProblem circle = load_problem(kData + "/circle_problem.json");
  CHECK(circle.slots.size() == 6);
  CHECK_FALSE(circle.slots[4].has_value());
  CHECK(circle.ranks.size() == 5);
  const ExactSequenceProblem torus = load_problem(kData + "/torus_problem.json");
  CHECK(torus.ranks.size() == torus.slots.size() - 1);
  CHECK(mv_solve(torus).status == SolveStatus::UnderDetermined);
  CHECK_THROWS_AS(problem_from_json(R"({"slots": [0, "one"]})"), InputError);
  CHECK_THROWS_AS(problem_from_json(R"({"ranks": []})"), InputError);
}

TEST_CASE("map documents") {
  const SmoothMap antipodal = load_map(kData + "/antipodal.map");
  CHECK(antipodal.domain_dimension() == 3);
  CHECK(antipodal(std::vector<double>{1, 2, 3}) == std::vector<double>{-1, -2, -3});
  const SmoothMap square = load_map(kData + "/square.json");
  CHECK(square(std::vector<double>{1, 2}) == std::vector<double>{-3, 4});
  CHECK_THROWS_AS(map_from_text(R"({"map": 3})"), InputError);
  CHECK_THROWS_AS(map_from_text("x; y"), ParseError);
}
