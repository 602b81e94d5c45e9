#pragma once

#include <string>
#include <vector>

#include "pdm/catalog.hpp"

namespace pdm::testing {

struct ModelPoints {
  std::string id;
  std::vector<ParamMap> points;
};

/// Five parameter points inside the windows of every active model.
inline const std::vector<ModelPoints>& sample_points() {
  static const std::vector<ModelPoints> pts = {
      {"box", {{{"alpha", 0.5}}, {{"alpha", -0.5}}, {{"alpha", 0.0}}, {{"alpha", 2.0}}, {{"alpha", 0.1}}}},
      {"trig_pt",
       {{{"A", 2}, {"alpha", 0.3}},
        {{"A", 1.5}, {"alpha", -0.5}},
        {{"A", 3}, {"alpha", 0.0}},
        {{"A", 2.5}, {"alpha", 1.5}},
        {{"A", 4}, {"alpha", 0.8}}}},
      {"hyperbolic_pt",
       {{{"A", 2}, {"alpha", 0.5}},
        {{"A", 1}, {"alpha", 0.2}},
        {{"A", 3}, {"alpha", 0.9}},
        {{"A", 0.5}, {"alpha", 0.1}},
        {{"A", 2.5}, {"alpha", 0.0}}}},
      {"shifted_osc",
       {{{"omega", 1}, {"b", 0.5}, {"alpha", 0.2}, {"beta", 0.3}},
        {{"omega", 2}, {"b", 0}, {"alpha", 0.5}, {"beta", 0.5}},
        {{"omega", 1}, {"b", 1}, {"alpha", 0}, {"beta", 0}},
        {{"omega", 0.5}, {"b", -0.3}, {"alpha", 1}, {"beta", 0.2}},
        {{"omega", 3}, {"b", 0.2}, {"alpha", 0.1}, {"beta", -0.2}}}},
      {"osc3d",
       {{{"omega", 1}, {"l", 1}, {"alpha", 0.2}},
        {{"omega", 2}, {"l", 0}, {"alpha", 0.5}},
        {{"omega", 1}, {"l", 2}, {"alpha", 0}},
        {{"omega", 0.5}, {"l", 3}, {"alpha", 1}},
        {{"omega", 1.5}, {"l", 1}, {"alpha", 0.05}}}},
      {"coulomb",
       {{{"e2", 1}, {"l", 0}, {"alpha", 0.1}},
        {{"e2", 4}, {"l", 1}, {"alpha", 0.2}},
        {{"e2", 2}, {"l", 0}, {"alpha", 0}},
        {{"e2", 1}, {"l", 2}, {"alpha", 0.01}},
        {{"e2", 3}, {"l", 0}, {"alpha", 0.3}}}},
      {"morse",
       {{{"A", 3}, {"B", 2}, {"alpha", 0.3}},
        {{"A", 5}, {"B", 1}, {"alpha", 0.1}},
        {{"A", 2}, {"B", 3}, {"alpha", 0.05}},
        {{"A", 4}, {"B", 4}, {"alpha", 0.5}},
        {{"A", 6}, {"B", 2}, {"alpha", 0.2}}}},
      {"eckart",
       {{{"A", 2}, {"B", 9}, {"alpha", 0.5}},
        {{"A", 1.5}, {"B", 4}, {"alpha", -2}},
        {{"A", 3}, {"B", 16}, {"alpha", -1}},
        {{"A", 2.5}, {"B", 10}, {"alpha", 0}},
        {{"A", 2}, {"B", 5}, {"alpha", 1}}}},
      {"scarf1",
       {{{"A", 3}, {"B", 1.2}, {"alpha", 0.4}},
        {{"A", 4}, {"B", 2}, {"alpha", -0.5}},
        {{"A", 2.5}, {"B", 0.5}, {"alpha", 0}},
        {{"A", 5}, {"B", 3}, {"alpha", 0.9}},
        {{"A", 3.5}, {"B", 1}, {"alpha", -0.2}}}},
      {"rosen_morse1",
       {{{"A", 2}, {"B", 1.5}, {"alpha", 0.4}, {"beta", 0.3}},
        {{"A", 1.5}, {"B", 0.5}, {"alpha", 0}, {"beta", 0}},
        {{"A", 3}, {"B", 2}, {"alpha", 1}, {"beta", 0.5}},
        {{"A", 2.5}, {"B", -1}, {"alpha", -0.5}, {"beta", -0.5}},
        {{"A", 4}, {"B", 3}, {"alpha", 0.2}, {"beta", 2}}}},
  };
  return pts;
}

}  // namespace pdm::testing
