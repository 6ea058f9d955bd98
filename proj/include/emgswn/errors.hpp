#pragma once

#include <stdexcept>

namespace emgswn {

// Invalid experiment or pipeline configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Missing or malformed input data (CLI exit code 3).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace emgswn
