#pragma once

#include <stdexcept>
#include <string>

namespace mixbound {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-range family parameters or a malformed chain-spec file.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class NotReversible : public Error {
 public:
  using Error::Error;
};

class NotIrreducible : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class BadEps : public Error {
 public:
  using Error::Error;
};

class BadRange : public Error {
 public:
  using Error::Error;
};

// Every Monte-Carlo replicate ran into a particle or time cap.
class AllCensored : public Error {
 public:
  using Error::Error;
};

}  // namespace mixbound
