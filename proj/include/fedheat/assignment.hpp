// Copyright 2026 The FedHeat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FEDHEAT_ASSIGNMENT_HPP_
#define FEDHEAT_ASSIGNMENT_HPP_

#include <vector>

#include "fedheat/matrix.hpp"

namespace fedheat {

// Minimum-cost assignment (Kuhn-Munkres, O(n^3)) on a rectangular cost
// matrix with rows <= cols. Returns the column assigned to each row.
std::vector<int> SolveAssignment(const Matrix& cost);

}  // namespace fedheat

#endif  // FEDHEAT_ASSIGNMENT_HPP_
