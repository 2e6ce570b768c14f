#ifndef RIESZLAB_ERROR_HPP
#define RIESZLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rieszlab {

// A violated mathematical precondition (parameter domain, shape, tag).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// The inputs were valid but the computation could not finish:
// non-PD matrix, quadrature non-convergence, exhausted rejection retries.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw DomainError(msg);
}

}  // namespace rieszlab

#endif
