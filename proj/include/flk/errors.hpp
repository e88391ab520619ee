#pragma once

#include <stdexcept>
#include <string>

namespace flk {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct BadParameters : Error {
    explicit BadParameters(const std::string& msg) : Error("BadParameters: " + msg) {}
};

struct NonIntegral : Error {
    explicit NonIntegral(const std::string& msg) : Error("NonIntegral: " + msg) {}
};

struct PoleAtRootOfUnity : Error {
    explicit PoleAtRootOfUnity(const std::string& msg)
        : Error("PoleAtRootOfUnity: " + msg) {}
};

struct UnsupportedType : Error {
    explicit UnsupportedType(const std::string& msg) : Error("UnsupportedType: " + msg) {}
};

struct NotReduced : Error {
    explicit NotReduced(const std::string& msg) : Error("NotReduced: " + msg) {}
};

struct NotLongestWord : Error {
    explicit NotLongestWord(const std::string& msg) : Error("NotLongestWord: " + msg) {}
};

struct ClosureViolation : Error {
    explicit ClosureViolation(const std::string& msg)
        : Error("ClosureViolation: " + msg) {}
};

struct NotFiltered : Error {
    explicit NotFiltered(const std::string& msg) : Error("NotFiltered: " + msg) {}
};

struct HopfDataMissing : Error {
    explicit HopfDataMissing(const std::string& msg)
        : Error("HopfDataMissing: " + msg) {}
};

struct UnsupportedAlgebra : Error {
    explicit UnsupportedAlgebra(const std::string& msg)
        : Error("UnsupportedAlgebra: " + msg) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error("BudgetExceeded: " + msg) {}
};

struct FieldTooLarge : Error {
    explicit FieldTooLarge(const std::string& msg) : Error("FieldTooLarge: " + msg) {}
};

struct NotLocal : Error {
    explicit NotLocal(const std::string& msg) : Error("NotLocal: " + msg) {}
};

struct CutoffUnstable : Error {
    explicit CutoffUnstable(const std::string& msg) : Error("CutoffUnstable: " + msg) {}
};

struct WeightsMissing : Error {
    explicit WeightsMissing(const std::string& msg) : Error("WeightsMissing: " + msg) {}
};

struct DegreeOutOfRange : Error {
    explicit DegreeOutOfRange(const std::string& msg)
        : Error("DegreeOutOfRange: " + msg) {}
};

struct BasisMismatch : Error {
    explicit BasisMismatch(const std::string& msg) : Error("BasisMismatch: " + msg) {}
};

struct NotASubalgebraMap : Error {
    explicit NotASubalgebraMap(const std::string& msg)
        : Error("NotASubalgebraMap: " + msg) {}
};

struct TooShort : Error {
    explicit TooShort(const std::string& msg) : Error("TooShort: " + msg) {}
};

struct ConfigInvalid : Error {
    explicit ConfigInvalid(const std::string& msg) : Error("ConfigInvalid: " + msg) {}
};

struct VersionMismatch : Error {
    explicit VersionMismatch(const std::string& msg)
        : Error("VersionMismatch: " + msg) {}
};

struct FieldMismatch : Error {
    explicit FieldMismatch(const std::string& msg) : Error("FieldMismatch: " + msg) {}
};

}  // namespace flk
