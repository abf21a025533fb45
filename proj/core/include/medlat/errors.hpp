#pragma once

#include <stdexcept>
#include <string>

namespace medlat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Poset validation failures. Each carries a concrete witness.
struct NotReflexive : Error {
  int x;
  explicit NotReflexive(int x_)
      : Error("relation is not reflexive at element " + std::to_string(x_)), x(x_) {}
};

struct NotAntisymmetric : Error {
  int x, y;
  NotAntisymmetric(int x_, int y_)
      : Error("relation is not antisymmetric: " + std::to_string(x_) + " <= " +
              std::to_string(y_) + " and " + std::to_string(y_) + " <= " + std::to_string(x_)),
        x(x_),
        y(y_) {}
};

struct NotTransitive : Error {
  int x, y, z;
  NotTransitive(int x_, int y_, int z_)
      : Error("relation is not transitive: " + std::to_string(x_) + " <= " + std::to_string(y_) +
              " <= " + std::to_string(z_) + " but not " + std::to_string(x_) + " <= " +
              std::to_string(z_)),
        x(x_),
        y(y_),
        z(z_) {}
};

struct NotJoinSemilattice : Error {
  int x, y;
  NotJoinSemilattice(int x_, int y_)
      : Error("{" + std::to_string(x_) + "," + std::to_string(y_) +
              "} has no least upper bound"),
        x(x_),
        y(y_) {}
};

struct NotMedian : Error {
  explicit NotMedian(const std::string& reason) : Error("context is not median: " + reason) {}
};

struct NotGraded : Error {
  NotGraded() : Error("context is not graded; rank metric undefined") {}
};

struct MeetUndefined : Error {
  int x, y;
  MeetUndefined(int x_, int y_)
      : Error("meet undefined: {" + std::to_string(x_) + "," + std::to_string(y_) +
              "} has no common lower bound"),
        x(x_),
        y(y_) {}
  MeetUndefined(int x_, int y_, const std::string& detail)
      : Error("meet undefined: " + detail), x(x_), y(y_) {}
};

struct SizeLimit : Error {
  explicit SizeLimit(const std::string& what) : Error("size limit exceeded: " + what) {}
};

struct WrongFlavor : Error {
  explicit WrongFlavor(const std::string& what) : Error("wrong relation flavor: " + what) {}
};

struct BadProfile : Error {
  explicit BadProfile(const std::string& what) : Error("bad profile: " + what) {}
};

struct BadInput : Error {
  explicit BadInput(const std::string& what) : Error("bad input: " + what) {}
};

struct NoLinearOrders : Error {
  NoLinearOrders() : Error("space contains no linear orders") {}
};

struct InternalInvariantViolation : Error {
  explicit InternalInvariantViolation(const std::string& what)
      : Error("internal invariant violation: " + what) {}
};

}  // namespace medlat
