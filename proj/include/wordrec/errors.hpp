#pragma once

#include <stdexcept>
#include <string>

namespace wordrec {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// --- audio i/o ---
struct MissingFile : Error { using Error::Error; };
struct NotWav : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };
struct TruncatedData : Error { using Error::Error; };
struct IoFailure : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };

// --- front end ---
struct InvalidConfig : Error { using Error::Error; };
struct EmptySignal : Error { using Error::Error; };
struct SampleRateMismatch : Error { using Error::Error; };

// --- spectral ---
struct BadFftSize : Error { using Error::Error; };
struct NegativeFrequency : Error { using Error::Error; };
struct NegativeMel : Error { using Error::Error; };
struct TooManyFilters : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// --- dtw ---
struct EmptySequence : Error { using Error::Error; };
struct InfeasibleConstraints : Error { using Error::Error; };

// --- template store ---
struct InvalidLabel : Error { using Error::Error; };
struct FingerprintMismatch : Error { using Error::Error; };
struct CorruptTemplate : Error { using Error::Error; };
struct MixedFingerprints : Error { using Error::Error; };
struct NoTemplates : Error { using Error::Error; };

// --- csv ---
struct CsvParseError : Error { using Error::Error; };

}  // namespace wordrec
