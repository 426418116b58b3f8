// Copyright 2026 the svesim authors.
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

#ifndef SVESIM_CORE_FLAGS_HPP
#define SVESIM_CORE_FLAGS_HPP

#include <optional>
#include <string>

#include "types.hpp"

namespace svesim {

/// NZCV interpretation for predicate results:
///   N = first active element of the governing predicate is set in result
///   Z = no result element is active within the governing predicate
///   C = the last governing-active element is NOT set in result
/// An empty governing predicate yields N=0, Z=1, C=1. V is always 0 here.
Flags predicateFlags(const PredicateValue& result, const PredicateValue& governing,
                     ElementSize es);

enum class Cond {
  Eq, Ne, Lt, Ge, Gt, Le,
  First, Nfrst, Last, Nlast, None, Any, Tcont, Tstop,
};

bool conditionHolds(Cond cond, const Flags& f);

std::optional<Cond> parseCond(const std::string& name);
const char* condName(Cond c);

}  // namespace svesim

#endif  // SVESIM_CORE_FLAGS_HPP
