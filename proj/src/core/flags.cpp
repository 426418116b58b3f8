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

#include "flags.hpp"

namespace svesim {

Flags predicateFlags(const PredicateValue& result, const PredicateValue& governing,
                     ElementSize es) {
  const unsigned n = governing.elements(es);
  int first = -1, last = -1;
  bool anyResult = false;
  for (unsigned i = 0; i < n; ++i) {
    if (!governing.active(i, es)) continue;
    if (first < 0) first = static_cast<int>(i);
    last = static_cast<int>(i);
    if (result.active(i, es)) anyResult = true;
  }
  Flags f;
  if (first < 0) {
    f.n = false;
    f.z = true;
    f.c = true;
  } else {
    f.n = result.active(static_cast<unsigned>(first), es);
    f.z = !anyResult;
    f.c = !result.active(static_cast<unsigned>(last), es);
  }
  f.v = false;
  return f;
}

bool conditionHolds(Cond cond, const Flags& f) {
  switch (cond) {
    case Cond::Eq:
    case Cond::None:
      return f.z;
    case Cond::Ne:
    case Cond::Any:
      return !f.z;
    case Cond::Lt:
    case Cond::Tstop:
      return f.n != f.v;
    case Cond::Ge:
    case Cond::Tcont:
      return f.n == f.v;
    case Cond::Gt:
      return !f.z && f.n == f.v;
    case Cond::Le:
      return f.z || f.n != f.v;
    case Cond::First:
      return f.n;
    case Cond::Nfrst:
      return !f.n;
    case Cond::Last:
      return !f.c;
    case Cond::Nlast:
      return f.c;
  }
  return false;
}

std::optional<Cond> parseCond(const std::string& name) {
  if (name == "eq") return Cond::Eq;
  if (name == "ne") return Cond::Ne;
  if (name == "lt") return Cond::Lt;
  if (name == "ge") return Cond::Ge;
  if (name == "gt") return Cond::Gt;
  if (name == "le") return Cond::Le;
  if (name == "first") return Cond::First;
  if (name == "nfrst") return Cond::Nfrst;
  if (name == "last") return Cond::Last;
  if (name == "nlast") return Cond::Nlast;
  if (name == "none") return Cond::None;
  if (name == "any") return Cond::Any;
  if (name == "tcont") return Cond::Tcont;
  if (name == "tstop") return Cond::Tstop;
  return std::nullopt;
}

const char* condName(Cond c) {
  switch (c) {
    case Cond::Eq: return "eq";
    case Cond::Ne: return "ne";
    case Cond::Lt: return "lt";
    case Cond::Ge: return "ge";
    case Cond::Gt: return "gt";
    case Cond::Le: return "le";
    case Cond::First: return "first";
    case Cond::Nfrst: return "nfrst";
    case Cond::Last: return "last";
    case Cond::Nlast: return "nlast";
    case Cond::None: return "none";
    case Cond::Any: return "any";
    case Cond::Tcont: return "tcont";
    case Cond::Tstop: return "tstop";
  }
  return "?";
}

}  // namespace svesim
