#ifndef PENGAP_ERRORS_HPP
#define PENGAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pengap {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// mortality / annuity
struct MalformedRow : Error { using Error::Error; };
struct NonContiguousAges : Error { using Error::Error; };
struct ProbabilityOutOfRange : Error { using Error::Error; };
struct AgeOutOfTable : Error { using Error::Error; };

// target calibration
struct NonPositiveGap : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };

// control
struct ClosedFormMismatch : Error { using Error::Error; };
struct ZeroWealth : Error { using Error::Error; };

// simulation / analysis
struct ConfigMismatch : Error { using Error::Error; };
struct NoSignChange : Error { using Error::Error; };
struct EmptySamples : Error { using Error::Error; };

// configuration / validation
struct InvalidConfig : Error { using Error::Error; };

} // namespace pengap

#endif
