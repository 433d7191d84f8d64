#ifndef FLATSUM_ERROR_HPP
#define FLATSUM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace flatsum {

// Every failure the library can signal.  Errors carry a code so callers can
// branch without parsing messages.
enum class errc {
    bad_argument,
    non_invertible,
    even_modulus,
    unsupported_modulus,
    not_squarefree,
    bad_divisor,
    bad_factorization,
    modulus_mismatch,
    bad_threshold,
    bad_delta,
    non_coprime,
    principal_character,
    unknown_suite,
    invalid_config,
    io_failure,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace flatsum

#endif
