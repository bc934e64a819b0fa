#pragma once
// 2015 crash-window information-coefficient fixture (N=23): three
// sentiment-model series against the index percentage change. Model A is
// the cognitive-enhanced blend, B the pure human baseline, C the
// standard-synthetic control.

#include <array>

namespace coglab::cli::fixture {

inline constexpr std::array<double, 23> kModelA = {
    -0.81, -0.96, -0.82, 0.04,  -0.83, -0.96, 0.08,  -0.05, -0.93, -0.98, -0.90, 0.23,
    -0.94, -0.97, -0.98, -0.95, -0.97, -0.02, 0.88,  -0.25, 0.28,  -0.68, -0.97};

inline constexpr std::array<double, 23> kModelB = {
    -0.85, -0.96, -0.89, 0.05,  -0.73, -0.96, -0.07, -0.07, -0.91, -0.98, -0.82, 0.23,
    -0.92, -0.95, -0.96, -0.85, -0.97, -0.05, 0.88,  -0.31, 0.25,  -0.73, -0.96};

inline constexpr std::array<double, 23> kModelC = {
    0.45, 0.15,  0.05,  0.28,  -0.55, -0.45, -0.85, -0.82, 0.05,  -0.75, -0.92, 0.1,
    0.35, -0.88, -0.95, -0.85, -0.75, -0.6,  -0.8,  -0.9,  -0.45, 0.1,   0.82};

inline constexpr std::array<double, 23> kIndexPctChange = {
    0.87,  -2.00, -3.47, 1.65, -3.67, -6.42, 2.19,  2.48, -3.46, -7.40, -3.34, 0.00,
    -5.23, -3.48, -5.77, 2.41, -1.29, 5.76,  4.54,  1.04, 2.41,  -0.34, -3.03};

}  // namespace coglab::cli::fixture
