#include "aqc/errors.hpp"

namespace aqc {

IntegrationError::IntegrationError(const std::string& what, double last_good_time)
    : std::runtime_error(what), last_good_time_(last_good_time) {}

QuadratureError::QuadratureError(const std::string& what, double value,
                                 double error_estimate)
    : std::runtime_error(what), value_(value), error_estimate_(error_estimate) {}

CutoffError::CutoffError(const std::string& what, std::size_t cutoff,
                         double top_population)
    : std::runtime_error(what), cutoff_(cutoff), top_population_(top_population) {}

}  // namespace aqc
