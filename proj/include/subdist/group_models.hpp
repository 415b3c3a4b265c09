#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace subdist {

using BigInt = boost::multiprecision::cpp_int;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Upper unitriangular integer matrix [[1, a, b], [0, 1, c], [0, 0, 1]].
struct HeisenbergMatrix {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  friend bool operator==(const HeisenbergMatrix&, const HeisenbergMatrix&) = default;
  friend bool operator<(const HeisenbergMatrix& l, const HeisenbergMatrix& r) {
    return std::tie(l.a, l.b, l.c) < std::tie(r.a, r.b, r.c);
  }
};

// x -> p^scale_exp * x + numerator / p^denom_exp, with denom_exp >= 0 and
// p not dividing numerator whenever denom_exp > 0 (lowest terms).
struct AffineMap {
  std::int64_t scale_exp = 0;
  BigInt numerator = 0;
  std::int64_t denom_exp = 0;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
  friend bool operator<(const AffineMap& l, const AffineMap& r) {
    return std::tie(l.scale_exp, l.denom_exp, l.numerator) <
           std::tie(r.scale_exp, r.denom_exp, r.numerator);
  }
};

struct IntVector {
  std::vector<std::int64_t> coords;

  friend bool operator==(const IntVector&, const IntVector&) = default;
  friend bool operator<(const IntVector& l, const IntVector& r) { return l.coords < r.coords; }
};

// Freely reduced word; letter +i is generator i (1-based), -i its inverse.
struct ReducedWord {
  std::vector<std::int32_t> letters;

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
  friend bool operator<(const ReducedWord& l, const ReducedWord& r) {
    if (l.letters.size() != r.letters.size()) return l.letters.size() < r.letters.size();
    return l.letters < r.letters;
  }
};

class Element;

struct ProductPair {
  std::vector<Element> parts;  // always two components

  friend bool operator==(const ProductPair&, const ProductPair&);
  friend bool operator<(const ProductPair&, const ProductPair&);
};

// Canonical payload of a group element: two Elements compare equal exactly
// when they represent the same group element of the same model.
class Element {
 public:
  using Payload = std::variant<IntVector, HeisenbergMatrix, AffineMap, ReducedWord, ProductPair>;

  Element() = default;
  Element(Payload payload) : payload_(std::move(payload)) {}  // NOLINT(implicit)

  const Payload& payload() const { return payload_; }

  template <class T>
  const T& as() const { return std::get<T>(payload_); }

  std::size_t hash() const;

  friend bool operator==(const Element& l, const Element& r) { return l.payload_ == r.payload_; }
  friend bool operator<(const Element& l, const Element& r) { return l.payload_ < r.payload_; }

 private:
  Payload payload_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const { return e.hash(); }
};

struct Generator {
  std::string name;
  Element element;
  std::size_t inverse_index = 0;
};

// Word over a model's symmetric generator list (indices into generators()).
using Word = std::vector<std::size_t>;

class GroupModel {
 public:
  virtual ~GroupModel() = default;

  // Identifier in the CLI grammar, e.g. "bs1p:2" or "product(free-abelian:1, bs1p:2)".
  virtual std::string name() const = 0;
  virtual Element identity() const = 0;
  virtual Element multiply(const Element& g, const Element& h) const = 0;
  virtual Element inverse(const Element& g) const = 0;
  virtual std::string format(const Element& g) const = 0;

  // X together with its formal inverses; generator 2i+1 is the inverse of 2i.
  const std::vector<Generator>& generators() const { return generators_; }
  // |X|, the number of generators before closing under inverses.
  std::size_t rank() const { return generators_.size() / 2; }

  std::size_t generator_index(const std::string& name) const;
  Element generator(const std::string& name) const;

  Element evaluate(std::span<const std::size_t> word) const;
  Element evaluate(std::span<const std::string> names) const;
  Element power(const Element& g, std::int64_t k) const;

 protected:
  // Registers x and its inverse, named `name` and `name^-1`.
  void add_generator(const std::string& name, Element x);

 private:
  std::vector<Generator> generators_;
};

using ModelPtr = std::shared_ptr<const GroupModel>;

ModelPtr free_abelian(std::size_t rank);
ModelPtr free_group(std::size_t rank);
ModelPtr heisenberg();
ModelPtr bs1p(std::int64_t p);
ModelPtr direct_product(ModelPtr left, ModelPtr right);

// Dispatch by family name: "free-abelian", "free", "heisenberg", "bs1p".
ModelPtr builtin(const std::string& family, std::span<const std::int64_t> params);

// Parses identifiers such as "heisenberg", "bs1p:2", "product(free-abelian:1, bs1p:2)".
ModelPtr parse_group(const std::string& identifier);

// A subgroup H <= G given by a membership predicate, an intrinsic model of H
// with its own generating set Y, and the embedding of that model into G.
class MarkedSubgroup {
 public:
  struct Parts {
    std::string name;
    ModelPtr ambient;
    ModelPtr intrinsic;
    std::function<Element(const Element&)> embed;
    std::function<std::optional<Element>(const Element&)> to_intrinsic;
    // Closed-form |h|_Y evaluated on an ambient member, when one is known.
    std::function<std::uint64_t(const Element&)> intrinsic_length;
    // Set when the intrinsic model is free abelian on the Y basis.
    std::optional<std::size_t> abelian_rank;
    bool equals_ambient = false;
  };

  explicit MarkedSubgroup(Parts parts);

  const std::string& name() const { return parts_.name; }
  const GroupModel& ambient() const { return *parts_.ambient; }
  const ModelPtr& ambient_ptr() const { return parts_.ambient; }
  const GroupModel& intrinsic() const { return *parts_.intrinsic; }
  const ModelPtr& intrinsic_ptr() const { return parts_.intrinsic; }

  bool contains(const Element& g) const { return parts_.to_intrinsic(g).has_value(); }
  Element embed(const Element& h) const { return parts_.embed(h); }
  std::optional<Element> to_intrinsic(const Element& g) const { return parts_.to_intrinsic(g); }

  bool has_closed_form_length() const { return static_cast<bool>(parts_.intrinsic_length); }
  // Requires has_closed_form_length() and contains(g).
  std::uint64_t intrinsic_length(const Element& g) const { return parts_.intrinsic_length(g); }

  std::optional<std::size_t> abelian_rank() const { return parts_.abelian_rank; }
  // Coordinates in the Y basis; requires abelian_rank() and contains(g).
  std::vector<std::int64_t> coordinates(const Element& g) const;
  Element from_coordinates(std::span<const std::int64_t> coords) const;

  // H = G with Y = X.
  bool equals_ambient() const { return parts_.equals_ambient; }

 private:
  Parts parts_;
};

using SubgroupPtr = std::shared_ptr<const MarkedSubgroup>;

// Supported names: "full", "gen-a", "center", "diagonal", "product-left",
// and "product(<left>, <right>)" over a direct product ambient.
SubgroupPtr marked_subgroup(const std::string& name, const ModelPtr& ambient);

}  // namespace subdist
