#pragma once

#include <stdexcept>
#include <string>

namespace qelect {

struct NotPowerOfTwo : std::invalid_argument {
    explicit NotPowerOfTwo(const std::string& what) : std::invalid_argument(what) {}
};

struct BehaviorCountMismatch : std::invalid_argument {
    explicit BehaviorCountMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct RefereeOutOfRange : std::out_of_range {
    explicit RefereeOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct HalfBias : std::invalid_argument {
    explicit HalfBias(const std::string& what) : std::invalid_argument(what) {}
};

struct StateIndexOutOfRange : std::out_of_range {
    explicit StateIndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct TooManyQubits : std::invalid_argument {
    explicit TooManyQubits(const std::string& what) : std::invalid_argument(what) {}
};

struct WrongLength : std::invalid_argument {
    explicit WrongLength(const std::string& what) : std::invalid_argument(what) {}
};

struct SampleTooLarge : std::invalid_argument {
    explicit SampleTooLarge(const std::string& what) : std::invalid_argument(what) {}
};

struct WrongProtocol : std::logic_error {
    explicit WrongProtocol(const std::string& what) : std::logic_error(what) {}
};

struct NegativeK : std::invalid_argument {
    explicit NegativeK(const std::string& what) : std::invalid_argument(what) {}
};

struct OutOfRange : std::domain_error {
    explicit OutOfRange(const std::string& what) : std::domain_error(what) {}
};

struct TooFewSamples : std::invalid_argument {
    explicit TooFewSamples(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace qelect
