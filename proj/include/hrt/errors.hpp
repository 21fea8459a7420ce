#pragma once

#include <stdexcept>
#include <string>

namespace hrt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexNotContained : Error { using Error::Error; };
struct DegreeCapExceeded : Error { using Error::Error; };
struct MissingAssignment : Error { using Error::Error; };
struct UnmappedColor : Error { using Error::Error; };
struct DomainOverlap : Error { using Error::Error; };
struct EmptyAmbientClass : Error { using Error::Error; };
struct NotInducedRestriction : Error { using Error::Error; };
struct BaseNotEmbedded : Error { using Error::Error; };
struct EmptyFrame : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct ZeroDensityDivisor : Error { using Error::Error; };
struct NoEmbeddingOfBase : Error { using Error::Error; };
struct ClassTooSmall : Error { using Error::Error; };
struct NotABlowup : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct DanglingReference : Error { using Error::Error; };

}  // namespace hrt
