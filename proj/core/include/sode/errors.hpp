#pragma once

#include <stdexcept>
#include <string>

namespace sode {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An instance (or schema) violates the declared attribute space.
class SchemaError : public Error {
public:
  explicit SchemaError(const std::string& what) : Error(what) {}
};

// A serialized payload is malformed, truncated, or of an unknown version.
class DecodeError : public Error {
public:
  explicit DecodeError(const std::string& what) : Error(what) {}
};

// An operation that needs at least one training instance was called too early.
class UntrainedError : public Error {
public:
  explicit UntrainedError(const std::string& what) : Error(what) {}
};

}  // namespace sode
