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

#ifndef FEDHEAT_LOGGING_HPP_
#define FEDHEAT_LOGGING_HPP_

#include <string>

namespace fedheat::logging {

// Level comes from FEDHEAT_LOG={error,warn,info,debug}; default warn.
// Messages go to stderr.
void Error(const std::string& message);
void Warn(const std::string& message);
void Info(const std::string& message);
void Debug(const std::string& message);

}  // namespace fedheat::logging

#endif  // FEDHEAT_LOGGING_HPP_
