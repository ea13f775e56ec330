#ifndef TAILDEP_COMMON_HPP
#define TAILDEP_COMMON_HPP

#include <limits>
#include <stdexcept>
#include <string>

namespace taildep {

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct unknown_family_error : error {
    using error::error;
};
struct invalid_params_error : error {
    using error::error;
};
struct mapping_undefined_error : error {
    using error::error;
};
struct not_a_norm_error : error {
    using error::error;
};
struct profile_unresolved_error : error {
    using error::error;
};
struct invalid_generator_error : error {
    using error::error;
};
struct non_convergent_error : error {
    using error::error;
};
struct precondition_error : error {
    using error::error;
};
struct too_few_exceedances_error : error {
    using error::error;
};
struct invalid_k_error : error {
    using error::error;
};
struct unsupported_mda_error : error {
    using error::error;
};

}  // namespace taildep

#endif
