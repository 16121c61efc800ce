#pragma once

#include <stdexcept>
#include <string>

namespace pforient {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input / request errors.
class UnknownFace : public Error { public: using Error::Error; };
class InvalidParameter : public Error { public: using Error::Error; };
class LengthMismatch : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class NotSquare : public Error { public: using Error::Error; };
class NotCyclic : public Error { public: using Error::Error; };
class Incoherent : public Error { public: using Error::Error; };
class ZeroIncidence : public Error { public: using Error::Error; };

// Resource guards.
class CapExceeded : public Error { public: using Error::Error; };
class TooLarge : public Error { public: using Error::Error; };

// Violations of the structural guarantees valid complexes must satisfy.
class NonOrientableOrInvalid : public Error { public: using Error::Error; };
class RankDeficient : public Error { public: using Error::Error; };
class ReductionMismatch : public Error { public: using Error::Error; };
class NullityMismatch : public Error { public: using Error::Error; };
class FormulaMismatch : public Error { public: using Error::Error; };
class PeelingStuck : public Error { public: using Error::Error; };

} // namespace pforient
