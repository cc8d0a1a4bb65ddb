// Copyright 2026 The Hyra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Benchmark matrices exactly as printed, including rows and columns that do
// not fit the state dimension. corpus.cpp maps them onto the models.

#include "corpus_data.hpp"

namespace hyra::detail {

const PrintedMatrix& platoon_comm_printed() {
  static const PrintedMatrix m{
      "A_m",
      {
      {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {1505, 4.668, -3.7734, -0.7999, 0.397, -0.042, -0.1741, -0.3516, -0.0095, -0.0097, 0.477, -0.125, -1.0099, 0.417, -0.043, -1.005, 0.4, -0.039, 0},
      {0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0.8316, 3.564, -0.0694, 1.0836, 3.6799, -2.9396, -0.555, 0.1114, -0.8996, 1.2196, 3.9099, 3.2106, -1.3136, 3.6518, -3.2906, -1.3154, 3.6531, -3.2889, 0},
      {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0.6932, 3.493, -0.0694, 0.7972, 3.1968, -0.0799, 1.3126, 3.099, -3.6556, 0.9972, 3.3697, -0.0896, 0.7972, 3.5968, -0.0816, 0.796, 3.595, -0.883, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0},
      {0.7932, 3.693, -0.1004, 0.7972, 2.96998, -0.0999, 1.2343, 3.897, -3.9156, 1.3968, 3.962, -3.7806, 1.9876, 2.222, -3.567, 1.9869, 2.23, -3.555, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0},
      {0.8972, 3.129, -0.0494, 0.9971, 3.5433, -0.0876, 1.1116, 3.067, -3.8956, 0.0072, 3.1168, -0.7657, 1.2372, 3.0968, -1.1276, 1.238, 3.0955, -1.1269, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1},
      {0.89, 3.1, -0.0485, 0.99, 3.5323, -0.0855, 1.1108, 3.955, -3.8546, 0.0069, 3.113, -0.7622, 1.2222, 3.0928, -1.1076, 1.229, 3.0885, -1.1112, 0},
      }};
  return m;
}

const PrintedMatrix& platoon_nocomm_printed() {
  static const PrintedMatrix m{
      "A_n",
      {
      {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {1505, 4.668, -3.7734, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 1.0836, 3.6799, -2.9396, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 1.3126, 3.099, -3.6556, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 1.3968, 3.992, -3.7806, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1.2372, 3.0968, -1.1276, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1.229, 3.0885, -1.1112},
      }};
  return m;
}

const std::vector<double>& platoon_comm_b_printed() {
  static const std::vector<double> b = {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  return b;
}

const std::vector<double>& platoon_nocomm_b_printed() {
  static const std::vector<double> b = {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  return b;
}

const PrintedMatrix& linswitch_printed(int mode) {
  static const PrintedMatrix m[4] = {
      {"A1",
       {
         {-0.8036, 8.739, -2.45, -8.27},
         {-8.6218, -0.585, -2.1006, 3.6},
         {2.451, 2.2294, 0.75, -3.6922},
         {1.8299, 1.9833, -2.4522, -1.7316},
       }},
      {"A2",
       {
         {-0.8316, 8.7658, -2.4744, -8.2608},
         {-0.8316, -0.586, -2.1006, 3.6035},
         {2.4511, 2.2394, 0.7538, -3.6934},
         {1.5964, 2.1936, -2.5872, -1.6812},
       }},
      {"A3",
       {
         {-0.9275, 8.8628, -2.5428, -8.2329},
         {-0.8316, -0.586, -2.1006, 3.6035},
         {2.4511, 2.2394, 0.7538, -3.6934},
         {0.7635, 3.0357, -3.1814, -1.4388},
       }},
      {"A4",
       {
         {-1.4021, 10.1647, -3.3937, -8.5139},
         {-0.8316, -0.586, -2.1006, 3.6035},
         {2.4511, 2.2394, 0.7538, -3.6934},
         {-3.3585, 14.3426, -10.5703, -3.8785},
       }},
  };
  return m[mode];
}

const std::vector<double>& linswitch_b_printed() {
  static const std::vector<double> b = {-0.0845, 0, 0, 0, -0.7342};
  return b;
}

}  // namespace hyra::detail
