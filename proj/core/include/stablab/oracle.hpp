#pragma once

#include <concepts>
#include <memory>
#include <string>
#include <typeinfo>
#include <utility>
#include <vector>

#include "stablab/perms.hpp"
#include "stablab/words.hpp"

namespace stablab {

template <class E>
concept GroupElementType = std::copyable<E> && requires(const E& a, const E& b) {
  { a * b } -> std::convertible_to<E>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_identity() } -> std::convertible_to<bool>;
  { a.str() } -> std::convertible_to<std::string>;
};

/// Type-erased value handle for an element of some marked group.
///
/// Handles from different oracles never compare equal; multiplying them throws.
class ElementHandle {
 public:
  template <GroupElementType E>
  explicit ElementHandle(E e) : self_(std::make_shared<const Model<E>>(std::move(e))) {}

  bool is_identity() const { return self_->is_identity(); }
  std::string str() const { return self_->str(); }

  template <class E>
  const E* get() const {
    auto* m = dynamic_cast<const Model<E>*>(self_.get());
    return m ? &m->value : nullptr;
  }

  friend ElementHandle operator*(const ElementHandle& a, const ElementHandle& b) {
    return ElementHandle(a.self_->multiply(*b.self_));
  }
  friend bool operator==(const ElementHandle& a, const ElementHandle& b) {
    return a.self_->equals(*b.self_);
  }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual bool is_identity() const = 0;
    virtual std::string str() const = 0;
    virtual std::shared_ptr<const Concept> multiply(const Concept& other) const = 0;
    virtual bool equals(const Concept& other) const = 0;
  };

  template <class E>
  struct Model final : Concept {
    explicit Model(E v) : value(std::move(v)) {}
    bool is_identity() const override { return value.is_identity(); }
    std::string str() const override { return value.str(); }
    std::shared_ptr<const Concept> multiply(const Concept& other) const override {
      auto* o = dynamic_cast<const Model*>(&other);
      if (!o) throw InvalidArgument("cannot multiply elements of different groups");
      return std::make_shared<const Model>(value * o->value);
    }
    bool equals(const Concept& other) const override {
      auto* o = dynamic_cast<const Model*>(&other);
      return o && value == o->value;
    }
    E value;
  };

  explicit ElementHandle(std::shared_ptr<const Concept> self) : self_(std::move(self)) {}

  std::shared_ptr<const Concept> self_;
};

/// A d-marked group (Gamma, S): evaluates free-group words through the
/// marking and decides whether they die. Implementations are immutable.
class MarkedGroupOracle {
 public:
  virtual ~MarkedGroupOracle() = default;

  virtual int rank() const = 0;
  virtual std::string name() const = 0;
  virtual ElementHandle evaluate(const ReducedWord& w) const = 0;

  /// mask[i] is true iff ball[i] evaluates to the identity.
  virtual std::vector<bool> identity_mask(const Ball& ball) const = 0;
};

using OraclePtr = std::shared_ptr<const MarkedGroupOracle>;

/// Adapter from a concrete group (identity, letter images, product) to an
/// oracle. `Group` must provide `element_type`, `rank()`, `name()`,
/// `identity()` and `letter(int)`.
template <class Group>
class GroupOracle final : public MarkedGroupOracle {
 public:
  using element_type = typename Group::element_type;
  static_assert(GroupElementType<element_type>);

  explicit GroupOracle(Group g) : group_(std::move(g)) {}

  int rank() const override { return group_.rank(); }
  std::string name() const override { return group_.name(); }
  const Group& group() const noexcept { return group_; }

  element_type eval(const ReducedWord& w) const {
    if (w.rank() != rank()) {
      throw InvalidArgument("rank mismatch: word of rank " + std::to_string(w.rank()) +
                            " given to oracle " + name());
    }
    element_type acc = group_.identity();
    for (int x : w.letters()) acc = acc * group_.letter(x);
    return acc;
  }

  ElementHandle evaluate(const ReducedWord& w) const override { return ElementHandle(eval(w)); }

  std::vector<bool> identity_mask(const Ball& ball) const override {
    if (ball.rank() != rank()) throw InvalidArgument("rank mismatch between ball and " + name());
    std::vector<element_type> values;
    values.reserve(ball.size());
    values.push_back(group_.identity());
    std::vector<bool> mask(ball.size());
    mask[0] = true;
    for (std::size_t i = 1; i < ball.size(); ++i) {
      values.push_back(values[ball.parent(i)] * group_.letter(ball.last_letter(i)));
      mask[i] = values.back().is_identity();
    }
    return mask;
  }

 private:
  Group group_;
};

/// Finite permutation group marked by a generator tuple.
class PermGroup {
 public:
  using element_type = Perm;
  PermGroup(GenTuple tuple, std::string name) : tuple_(std::move(tuple)), name_(std::move(name)) {}
  int rank() const { return tuple_.rank(); }
  std::string name() const { return name_; }
  Perm identity() const { return Perm::identity(tuple_.degree()); }
  const Perm& letter(int x) const { return tuple_.letter(x); }
  const GenTuple& tuple() const noexcept { return tuple_; }

 private:
  GenTuple tuple_;
  std::string name_;
};

/// The free group evaluated into itself.
class FreeGroup {
 public:
  using element_type = ReducedWord;
  explicit FreeGroup(int rank) : rank_(rank) {}
  int rank() const { return rank_; }
  std::string name() const { return "free:" + std::to_string(rank_); }
  ReducedWord identity() const { return ReducedWord(rank_); }
  ReducedWord letter(int x) const { return ReducedWord::generator(rank_, x); }

 private:
  int rank_;
};

struct TrivialElement {
  bool is_identity() const { return true; }
  std::string str() const { return "e"; }
  friend TrivialElement operator*(TrivialElement, TrivialElement) { return {}; }
  friend bool operator==(TrivialElement, TrivialElement) { return true; }
};

/// The trivial group with a rank-d marking.
class TrivialGroup {
 public:
  using element_type = TrivialElement;
  explicit TrivialGroup(int rank) : rank_(rank) {}
  int rank() const { return rank_; }
  std::string name() const { return "trivial:" + std::to_string(rank_); }
  TrivialElement identity() const { return {}; }
  TrivialElement letter(int) const { return {}; }

 private:
  int rank_;
};

OraclePtr perm_oracle(GenTuple tuple, std::string name = "perm");
OraclePtr free_oracle(int rank);
OraclePtr trivial_oracle(int rank);

/// { w in B(r) : w evaluates to the identity }, i.e. ker(pi_S) restricted to the ball.
WordSet kernel_fingerprint(const MarkedGroupOracle& oracle, int radius,
                           std::size_t ball_cap = kDefaultBallCap);

}  // namespace stablab
