#pragma once

#include <stdexcept>
#include <string>

namespace webtraj {

// Base class for all library errors so callers can catch the whole family.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- action / reply protocol ---
struct MalformedAction : Error {
    using Error::Error;
};
struct MissingThought : Error {
    using Error::Error;
};
struct MissingAction : Error {
    using Error::Error;
};
struct ProtocolViolation : Error {
    using Error::Error;
};

// --- backends ---
struct BackendUnavailable : Error {
    using Error::Error;
};
struct ScriptMiss : Error {
    using Error::Error;
};

// --- environment ---
struct UnknownSite : Error {
    using Error::Error;
};
struct UnknownQuery : Error {
    using Error::Error;
};
struct InvalidElement : Error {
    using Error::Error;
};

// --- judging / curation ---
struct JudgeUnavailable : Error {
    using Error::Error;
};
struct UnparseableVerdict : Error {
    using Error::Error;
};
struct EmptySite : Error {
    using Error::Error;
};

// --- reflection / branching / rollback ---
struct EmptyVerbalization : Error {
    using Error::Error;
};
struct NoValidCandidate : Error {
    using Error::Error;
};
struct NoAlternative : Error {
    using Error::Error;
};
struct WrongRecoveryAction : Error {
    using Error::Error;
};
struct ReplayMismatch : Error {
    using Error::Error;
};

// --- configuration ---
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace webtraj
