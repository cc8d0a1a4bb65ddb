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


#ifndef HYRA_SRC_CORPUS_DATA_HPP_
#define HYRA_SRC_CORPUS_DATA_HPP_

#include <string>
#include <vector>

namespace hyra::detail {

// Rows as printed; rows may differ in length.
struct PrintedMatrix {
  std::string name;
  std::vector<std::vector<double>> rows;
};

const PrintedMatrix& platoon_comm_printed();
const PrintedMatrix& platoon_nocomm_printed();
const std::vector<double>& platoon_comm_b_printed();
const std::vector<double>& platoon_nocomm_b_printed();
const PrintedMatrix& linswitch_printed(int mode);  // mode 0..3
const std::vector<double>& linswitch_b_printed();

}  // namespace hyra::detail

#endif  // HYRA_SRC_CORPUS_DATA_HPP_
