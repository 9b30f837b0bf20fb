/*
 * Copyright 2026 The memsoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MEMSOC_ERRORS_HPP
#define MEMSOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace memsoc {

/// Base class for all simulator errors. Catching SimError catches everything
/// the library throws on purpose; std::exception still catches parse errors
/// coming out of third-party code.
class SimError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

#define MEMSOC_DEFINE_ERROR(NAME)                        \
	class NAME : public SimError {                       \
	public:                                              \
		using SimError::SimError;                        \
	}

// memristor / arrays
MEMSOC_DEFINE_ERROR(VoltageTooLow);
MEMSOC_DEFINE_ERROR(AlreadyFormed);
MEMSOC_DEFINE_ERROR(NotFormed);
MEMSOC_DEFINE_ERROR(LevelOutOfRange);
MEMSOC_DEFINE_ERROR(ReadVoltageTooHigh);
MEMSOC_DEFINE_ERROR(WrongParadigm);
MEMSOC_DEFINE_ERROR(ShapeMismatch);
MEMSOC_DEFINE_ERROR(BadTernarySymbol);
MEMSOC_DEFINE_ERROR(SramOutOfRange);

// noc / bridge
MEMSOC_DEFINE_ERROR(BadNodeId);
MEMSOC_DEFINE_ERROR(TapAlreadyAttached);
MEMSOC_DEFINE_ERROR(AlreadyConnected);

// control
MEMSOC_DEFINE_ERROR(BadAddress);
MEMSOC_DEFINE_ERROR(ScanDisabled);

// budget / description
MEMSOC_DEFINE_ERROR(ClockAboveMax);
MEMSOC_DEFINE_ERROR(MalformedDescription);

// harness
MEMSOC_DEFINE_ERROR(BadInput);

#undef MEMSOC_DEFINE_ERROR

} // namespace memsoc

#endif // MEMSOC_ERRORS_HPP
