// Copyright 2026 The Miscount Authors.
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

#ifndef MISCOUNT_FORMAT_HPP_
#define MISCOUNT_FORMAT_HPP_

#include <string>

namespace miscount {

// printf("%.12g"), the precision used by every CSV the tools emit.
std::string FormatDecimal(double value);

}  // namespace miscount

#endif  // MISCOUNT_FORMAT_HPP_
