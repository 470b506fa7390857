#pragma once

#include <stdexcept>
#include <vector>

#include "mabic3/generalizer.hpp"

namespace tables {

using mabic3::GenParams;

struct Regime {
    int lo, hi;
    GenParams p;
};

// Hand-evaluated piecewise tables on integer activities 0..200.
const std::vector<Regime> kBalanced = {
    {0, 9, {0, 0, 0}},       {10, 19, {2, 1, 1}},     {20, 29, {3, 1, 1}},     {30, 39, {4, 1, 1}},
    {40, 40, {5, 1, 5}},     {41, 42, {5, 1, 7}},     {43, 46, {5, 1, 8}},     {47, 54, {5, 1, 9}},
    {55, 69, {5, 1, 10}},    {70, 90, {5, 1, 11}},    {91, 121, {5, 1, 12}},   {122, 164, {5, 1, 13}},
    {165, 200, {5, 1, 14}},
};
const std::vector<Regime> kAggressive = {
    {0, 4, {1, 1, 1}},       {5, 12, {3, 1, 2}},      {13, 20, {4, 1, 2}},     {21, 24, {5, 1, 2}},
    {25, 25, {6, 1, 6}},     {26, 28, {6, 1, 9}},     {29, 32, {6, 1, 10}},    {33, 38, {6, 1, 11}},
    {39, 49, {6, 1, 12}},    {50, 63, {6, 1, 13}},    {64, 84, {6, 1, 14}},    {85, 110, {6, 1, 15}},
    {111, 144, {6, 1, 16}},  {145, 186, {6, 1, 17}},  {187, 200, {6, 1, 18}},
};
const std::vector<Regime> kConservative = {
    {0, 14, {0, 0, 0}}, {15, 26, {1, 0, 1}}, {27, 38, {2, 0, 1}},
    {39, 49, {3, 0, 1}}, {50, 50, {3, 1, 4}}, {51, 200, {3, 1, 6}},
};

GenParams lookup(const std::vector<Regime>& t, int a) {
    for (const auto& r : t) {
        if (a >= r.lo && a <= r.hi) return r.p;
    }
    throw std::out_of_range("activity");
}

}  // namespace tables
