#ifndef RUINKIT_ERRORS_HPP
#define RUINKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ruinkit {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MomentUnavailable : public Error { public: using Error::Error; };
class TransformUnavailable : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class NotRational : public Error { public: using Error::Error; };
class SingularSystem : public Error { public: using Error::Error; };
class InconsistentConstraints : public Error { public: using Error::Error; };
class UnstablePole : public Error { public: using Error::Error; };
class PoleAtZero : public Error { public: using Error::Error; };
class NumericalInconsistency : public Error { public: using Error::Error; };
class NoRoot : public Error { public: using Error::Error; };
class NotSupported : public Error { public: using Error::Error; };
class PerturbedNotSupported : public Error { public: using Error::Error; };
class NotPerturbed : public Error { public: using Error::Error; };
class InfeasibleMoments : public Error { public: using Error::Error; };
class OrderCap : public Error { public: using Error::Error; };
class NegativeWeight : public Error { public: using Error::Error; };
class InvalidSubgenerator : public Error { public: using Error::Error; };
class SamplerUnavailable : public Error { public: using Error::Error; };
class ContourFailure : public Error { public: using Error::Error; };
class NotApplicable : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

} // namespace ruinkit

#endif
