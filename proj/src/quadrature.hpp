#pragma once

#include <array>

// Quadrature tables used by the assembly routines. Triangle rules are given
// in barycentric coordinates with weights summing to 1 (multiply by the
// triangle area). Edge rules are on the unit interval [0,1].

namespace robin::quad {

// 7-point degree-5 rule (Strang-Fix / TWB order 5)
struct TriPoint {
  double l0, l1, l2, w;
};

inline constexpr std::array<TriPoint, 7> tri7 = {{
    {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.225},
    {0.059715871789770, 0.470142064105115, 0.470142064105115, 0.132394152788506},
    {0.470142064105115, 0.059715871789770, 0.470142064105115, 0.132394152788506},
    {0.470142064105115, 0.470142064105115, 0.059715871789770, 0.132394152788506},
    {0.797426985353087, 0.101286507323456, 0.101286507323456, 0.125939180544827},
    {0.101286507323456, 0.797426985353087, 0.101286507323456, 0.125939180544827},
    {0.101286507323456, 0.101286507323456, 0.797426985353087, 0.125939180544827},
}};

struct EdgePoint {
  double t, w;
};

// 2-point Gauss on [0,1], exact through degree 3
inline constexpr std::array<EdgePoint, 2> edge2 = {{
    {0.211324865405187, 0.5},
    {0.788675134594813, 0.5},
}};

// 3-point Gauss on [0,1], exact through degree 5
inline constexpr std::array<EdgePoint, 3> edge3 = {{
    {0.112701665379258, 5.0 / 18.0},
    {0.5, 8.0 / 18.0},
    {0.887298334620742, 5.0 / 18.0},
}};

}  // namespace robin::quad
