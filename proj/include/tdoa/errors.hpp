#pragma once

#include <stdexcept>
#include <string>

namespace tdoa {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed rational, point, config file or polynomial record.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The three receivers lie on a common line (W == 0).
class CollinearReceivers : public Error {
 public:
  CollinearReceivers() : Error("CollinearReceivers: receivers m0, m1, m2 are collinear (W = 0)") {}
};

/// A quantity normalized by a receiver range was requested at that receiver.
class AtReceiver : public Error {
 public:
  explicit AtReceiver(int index)
      : Error("AtReceiver: point coincides with receiver m" + std::to_string(index)), index_(index) {}
  [[nodiscard]] int index() const { return index_; }

 private:
  int index_;
};

/// The curve gradient is numerically zero, so no first-order distance exists.
class GradientVanishes : public Error {
 public:
  GradientVanishes() : Error("GradientVanishes: |grad F| below tolerance, distance estimate unavailable") {}
};

}  // namespace tdoa
