#pragma once

#include <stdexcept>
#include <string>

namespace fogplace {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyApplication : public Error { public: using Error::Error; };
class NegativeDemand : public Error { public: using Error::Error; };
class LengthMismatch : public Error { public: using Error::Error; };
class ShapeMismatch : public Error { public: using Error::Error; };
class InvalidConfig : public Error { public: using Error::Error; };
class InvalidParams : public Error { public: using Error::Error; };
class TooLarge : public Error { public: using Error::Error; };
class EmptyFront : public Error { public: using Error::Error; };
class NoFeasiblePlacement : public Error { public: using Error::Error; };
class NoIspGateway : public Error { public: using Error::Error; };
class OutOfRange : public Error { public: using Error::Error; };

} // namespace fogplace
