// Copyright 2026 The logicaltensor Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception hierarchy. Every library failure derives from logicaltensor::Error.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace logicaltensor {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define LOGICALTENSOR_DEFINE_ERROR(Name)                                       \
    class Name : public Error {                                                \
      public:                                                                  \
        explicit Name(const std::string &what)                                 \
            : Error(std::string(#Name ": ") + what) {}                         \
    }

/// Two systems of one graph share a vertex with different states.
LOGICALTENSOR_DEFINE_ERROR(WellNamednessViolation);
LOGICALTENSOR_DEFINE_ERROR(IncompatibleUnion);
LOGICALTENSOR_DEFINE_ERROR(UniverseTooLarge);
LOGICALTENSOR_DEFINE_ERROR(UniverseMismatch);
/// A system or graph does not belong to the universe it is used with.
LOGICALTENSOR_DEFINE_ERROR(OutOfUniverse);
/// A selector returned systems that are not part of its input graph.
LOGICALTENSOR_DEFINE_ERROR(SubsetViolation);
/// A selector failed the restriction axiom on some universe.
LOGICALTENSOR_DEFINE_ERROR(RestrictionAxiomViolation);
LOGICALTENSOR_DEFINE_ERROR(InternalContractViolation);
LOGICALTENSOR_DEFINE_ERROR(NotNormalized);
/// Two characterisations that must agree did not. Signals a bug.
LOGICALTENSOR_DEFINE_ERROR(EquivalenceViolation);
LOGICALTENSOR_DEFINE_ERROR(NotUnitary);
LOGICALTENSOR_DEFINE_ERROR(NotPointwise);
LOGICALTENSOR_DEFINE_ERROR(NotNamePreserving);
LOGICALTENSOR_DEFINE_ERROR(NotUnitaryOnRange);
LOGICALTENSOR_DEFINE_ERROR(PrerequisiteViolation);
LOGICALTENSOR_DEFINE_ERROR(ReconstructionFailure);
LOGICALTENSOR_DEFINE_ERROR(ParseError);

#undef LOGICALTENSOR_DEFINE_ERROR

} // namespace logicaltensor
