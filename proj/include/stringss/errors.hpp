#pragma once

#include <stdexcept>
#include <string>

namespace stringss {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    /// Stable identifier used in diagnostics, e.g. "CompositeCharacteristic".
    virtual const char* kind() const noexcept { return "Error"; }
};

#define STRINGSS_ERROR(Name)                                              \
    struct Name : Error {                                                 \
        using Error::Error;                                               \
        const char* kind() const noexcept override { return #Name; }      \
    }

// scalars
STRINGSS_ERROR(CompositeCharacteristic);
STRINGSS_ERROR(DivisionByZero);
STRINGSS_ERROR(FieldMismatch);

// graded_algebra
STRINGSS_ERROR(ParityViolation);
STRINGSS_ERROR(DuplicateName);
STRINGSS_ERROR(LaurentNonzeroDegree);
STRINGSS_ERROR(UnknownGenerator);
STRINGSS_ERROR(AlgebraMismatch);
STRINGSS_ERROR(InfiniteBasis);

// dga
STRINGSS_ERROR(InhomogeneousImage);
STRINGSS_ERROR(WrongBidegree);
STRINGSS_ERROR(NotSquareZero);
STRINGSS_ERROR(CutoffTooTight);
STRINGSS_ERROR(NotAChainMap);

// analysis
STRINGSS_ERROR(OddN);

#undef STRINGSS_ERROR

}  // namespace stringss
