#include "subdist/group_models.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "subdist/identifiers.hpp"

namespace subdist {

bool operator==(const ProductPair& l, const ProductPair& r) { return l.parts == r.parts; }
bool operator<(const ProductPair& l, const ProductPair& r) { return l.parts < r.parts; }

namespace {

inline void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(x, y, &out)) throw std::overflow_error("64-bit overflow in group arithmetic");
  return out;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(x, y, &out)) throw std::overflow_error("64-bit overflow in group arithmetic");
  return out;
}

std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("subgroup coordinate exceeds 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

std::string letter_name(std::size_t i, std::size_t count) {
  if (count <= 26) return std::string(1, static_cast<char>('a' + i));
  return "g" + std::to_string(i + 1);
}

// ---------------------------------------------------------------------------

class FreeAbelianModel final : public GroupModel {
 public:
  explicit FreeAbelianModel(std::size_t rank) : rank_(rank) {
    for (std::size_t i = 0; i < rank; ++i) {
      IntVector v{std::vector<std::int64_t>(rank, 0)};
      v.coords[i] = 1;
      add_generator(letter_name(i, rank), Element(v));
    }
  }

  std::string name() const override { return "free-abelian:" + std::to_string(rank_); }
  Element identity() const override { return Element(IntVector{std::vector<std::int64_t>(rank_, 0)}); }

  Element multiply(const Element& g, const Element& h) const override {
    IntVector out = g.as<IntVector>();
    const auto& hv = h.as<IntVector>().coords;
    for (std::size_t i = 0; i < rank_; ++i) out.coords[i] = checked_add(out.coords[i], hv[i]);
    return Element(std::move(out));
  }

  Element inverse(const Element& g) const override {
    IntVector out = g.as<IntVector>();
    for (auto& c : out.coords) c = -c;
    return Element(std::move(out));
  }

  std::string format(const Element& g) const override {
    std::ostringstream os;
    os << "(";
    const auto& c = g.as<IntVector>().coords;
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ")";
    return os.str();
  }

  std::size_t dimension() const { return rank_; }

 private:
  std::size_t rank_;
};

class FreeGroupModel final : public GroupModel {
 public:
  explicit FreeGroupModel(std::size_t rank) : rank_(rank) {
    for (std::size_t i = 0; i < rank; ++i) {
      add_generator(letter_name(i, rank), Element(ReducedWord{{static_cast<std::int32_t>(i + 1)}}));
    }
  }

  std::string name() const override { return "free:" + std::to_string(rank_); }
  Element identity() const override { return Element(ReducedWord{}); }

  Element multiply(const Element& g, const Element& h) const override {
    ReducedWord out = g.as<ReducedWord>();
    for (auto letter : h.as<ReducedWord>().letters) {
      if (!out.letters.empty() && out.letters.back() == -letter) {
        out.letters.pop_back();
      } else {
        out.letters.push_back(letter);
      }
    }
    return Element(std::move(out));
  }

  Element inverse(const Element& g) const override {
    ReducedWord out;
    const auto& w = g.as<ReducedWord>().letters;
    out.letters.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.letters.push_back(-*it);
    return Element(std::move(out));
  }

  std::string format(const Element& g) const override {
    const auto& w = g.as<ReducedWord>().letters;
    if (w.empty()) return "e";
    std::string out;
    for (auto letter : w) {
      auto i = static_cast<std::size_t>(std::abs(letter) - 1);
      if (!out.empty()) out += " ";
      out += letter_name(i, rank_);
      if (letter < 0) out += "^-1";
    }
    return out;
  }

 private:
  std::size_t rank_;
};

class HeisenbergModel final : public GroupModel {
 public:
  HeisenbergModel() {
    add_generator("x", Element(HeisenbergMatrix{1, 0, 0}));
    add_generator("y", Element(HeisenbergMatrix{0, 0, 1}));
    add_generator("z", Element(HeisenbergMatrix{0, 1, 0}));
  }

  std::string name() const override { return "heisenberg"; }
  Element identity() const override { return Element(HeisenbergMatrix{}); }

  Element multiply(const Element& g, const Element& h) const override {
    const auto& l = g.as<HeisenbergMatrix>();
    const auto& r = h.as<HeisenbergMatrix>();
    return Element(HeisenbergMatrix{checked_add(l.a, r.a),
                                    checked_add(checked_add(l.b, r.b), checked_mul(l.a, r.c)),
                                    checked_add(l.c, r.c)});
  }

  Element inverse(const Element& g) const override {
    const auto& m = g.as<HeisenbergMatrix>();
    return Element(HeisenbergMatrix{-m.a, checked_add(-m.b, checked_mul(m.a, m.c)), -m.c});
  }

  std::string format(const Element& g) const override {
    const auto& m = g.as<HeisenbergMatrix>();
    std::ostringstream os;
    os << "[[1," << m.a << "," << m.b << "],[0,1," << m.c << "],[0,0,1]]";
    return os.str();
  }
};

class BaumslagSolitarModel final : public GroupModel {
 public:
  explicit BaumslagSolitarModel(std::int64_t p) : p_(p) {
    add_generator("a", Element(AffineMap{0, 1, 0}));
    add_generator("b", Element(AffineMap{-1, 0, 0}));
  }

  std::string name() const override { return "bs1p:" + std::to_string(p_); }
  Element identity() const override { return Element(AffineMap{}); }

  // (g*h)(x) = g(h(x)) = p^(k1+k2) x + p^k1 t2 + t1
  Element multiply(const Element& g, const Element& h) const override {
    const auto& l = g.as<AffineMap>();
    const auto& r = h.as<AffineMap>();
    AffineMap out;
    out.scale_exp = checked_add(l.scale_exp, r.scale_exp);
    BigInt num = r.numerator;
    std::int64_t e = r.denom_exp;
    if (l.scale_exp >= 0) {
      num *= pow_p(l.scale_exp);
    } else {
      e = checked_add(e, -l.scale_exp);
    }
    std::int64_t common = std::max(e, l.denom_exp);
    out.numerator = num * pow_p(common - e) + l.numerator * pow_p(common - l.denom_exp);
    out.denom_exp = common;
    normalize(out);
    return Element(std::move(out));
  }

  // g^-1(x) = p^-k x - p^-k t
  Element inverse(const Element& g) const override {
    const auto& m = g.as<AffineMap>();
    AffineMap out;
    out.scale_exp = -m.scale_exp;
    out.numerator = -m.numerator;
    out.denom_exp = m.denom_exp;
    if (out.scale_exp >= 0) {
      out.numerator *= pow_p(out.scale_exp);
    } else {
      out.denom_exp = checked_add(out.denom_exp, -out.scale_exp);
    }
    normalize(out);
    return Element(std::move(out));
  }

  std::string format(const Element& g) const override {
    const auto& m = g.as<AffineMap>();
    std::ostringstream os;
    os << "x->" << p_ << "^" << m.scale_exp << "x";
    if (m.numerator < 0) {
      os << "-" << -m.numerator;
    } else {
      os << "+" << m.numerator;
    }
    if (m.denom_exp != 0) os << "/" << p_ << "^" << m.denom_exp;
    return os.str();
  }

  std::int64_t p() const { return p_; }

 private:
  BigInt pow_p(std::int64_t e) const {
    if (e < static_cast<std::int64_t>(small_powers_.size()) && !small_powers_.empty()) {
      return small_powers_[static_cast<std::size_t>(e)];
    }
    return boost::multiprecision::pow(BigInt(p_), static_cast<unsigned>(e));
  }

  void normalize(AffineMap& m) const {
    if (m.numerator == 0) {
      m.denom_exp = 0;
      return;
    }
    while (m.denom_exp > 0 && m.numerator % p_ == 0) {
      m.numerator /= p_;
      --m.denom_exp;
    }
  }

  std::int64_t p_;
  std::vector<BigInt> small_powers_ = [this] {
    std::vector<BigInt> v;
    BigInt x = 1;
    for (int i = 0; i < 64; ++i) {
      v.push_back(x);
      x *= p_;
    }
    return v;
  }();
};

class ProductModel final : public GroupModel {
 public:
  ProductModel(ModelPtr left, ModelPtr right) : left_(std::move(left)), right_(std::move(right)) {
    for (std::size_t i = 0; i < left_->generators().size(); i += 2) {
      const auto& gen = left_->generators()[i];
      add_generator("(" + gen.name + ",e)", pair(gen.element, right_->identity()));
    }
    for (std::size_t i = 0; i < right_->generators().size(); i += 2) {
      const auto& gen = right_->generators()[i];
      add_generator("(e," + gen.name + ")", pair(left_->identity(), gen.element));
    }
  }

  std::string name() const override { return "product(" + left_->name() + ", " + right_->name() + ")"; }
  Element identity() const override { return pair(left_->identity(), right_->identity()); }

  Element multiply(const Element& g, const Element& h) const override {
    const auto& l = g.as<ProductPair>().parts;
    const auto& r = h.as<ProductPair>().parts;
    return pair(left_->multiply(l[0], r[0]), right_->multiply(l[1], r[1]));
  }

  Element inverse(const Element& g) const override {
    const auto& parts = g.as<ProductPair>().parts;
    return pair(left_->inverse(parts[0]), right_->inverse(parts[1]));
  }

  std::string format(const Element& g) const override {
    const auto& parts = g.as<ProductPair>().parts;
    return "(" + left_->format(parts[0]) + "," + right_->format(parts[1]) + ")";
  }

  static Element pair(Element l, Element r) {
    ProductPair out;
    out.parts.reserve(2);
    out.parts.push_back(std::move(l));
    out.parts.push_back(std::move(r));
    return Element(std::move(out));
  }

  const ModelPtr& left() const { return left_; }
  const ModelPtr& right() const { return right_; }

 private:
  ModelPtr left_;
  ModelPtr right_;
};

std::size_t hash_bigint(const BigInt& v) {
  std::size_t seed = v.sign() < 0 ? 1 : 0;
  // Limb-wise hash; cpp_int keeps magnitude in little-endian limbs.
  const auto& backend = v.backend();
  for (unsigned i = 0; i < backend.size(); ++i) hash_mix(seed, static_cast<std::size_t>(backend.limbs()[i]));
  return seed;
}

struct PayloadHasher {
  std::size_t operator()(const IntVector& v) const {
    std::size_t seed = 0x51;
    for (auto c : v.coords) hash_mix(seed, std::hash<std::int64_t>{}(c));
    return seed;
  }
  std::size_t operator()(const HeisenbergMatrix& m) const {
    std::size_t seed = 0x17;
    hash_mix(seed, std::hash<std::int64_t>{}(m.a));
    hash_mix(seed, std::hash<std::int64_t>{}(m.b));
    hash_mix(seed, std::hash<std::int64_t>{}(m.c));
    return seed;
  }
  std::size_t operator()(const AffineMap& m) const {
    std::size_t seed = 0x3b;
    hash_mix(seed, std::hash<std::int64_t>{}(m.scale_exp));
    hash_mix(seed, std::hash<std::int64_t>{}(m.denom_exp));
    hash_mix(seed, hash_bigint(m.numerator));
    return seed;
  }
  std::size_t operator()(const ReducedWord& w) const {
    std::size_t seed = 0x7d;
    for (auto l : w.letters) hash_mix(seed, std::hash<std::int32_t>{}(l));
    return seed;
  }
  std::size_t operator()(const ProductPair& p) const {
    std::size_t seed = 0x29;
    for (const auto& part : p.parts) hash_mix(seed, part.hash());
    return seed;
  }
};

// ---------------------------------------------------------------------------
// Subgroups

MarkedSubgroup::Parts cyclic_subgroup(std::string name, const ModelPtr& ambient, Element generator,
                                      std::function<std::optional<std::int64_t>(const Element&)> exponent) {
  MarkedSubgroup::Parts parts;
  parts.name = std::move(name);
  parts.ambient = ambient;
  parts.intrinsic = free_abelian(1);
  parts.embed = [ambient, generator](const Element& h) {
    return ambient->power(generator, h.as<IntVector>().coords.at(0));
  };
  parts.to_intrinsic = [exponent](const Element& g) -> std::optional<Element> {
    auto k = exponent(g);
    if (!k) return std::nullopt;
    return Element(IntVector{{*k}});
  };
  parts.intrinsic_length = [exponent](const Element& g) -> std::uint64_t {
    auto k = exponent(g);
    return static_cast<std::uint64_t>(k ? std::abs(*k) : 0);
  };
  parts.abelian_rank = 1;
  return parts;
}

std::uint64_t l1_norm(const IntVector& v) {
  std::uint64_t total = 0;
  for (auto c : v.coords) total += static_cast<std::uint64_t>(std::abs(c));
  return total;
}

MarkedSubgroup::Parts full_subgroup(const ModelPtr& ambient) {
  MarkedSubgroup::Parts parts;
  parts.name = "full";
  parts.ambient = ambient;
  parts.intrinsic = ambient;
  parts.embed = [](const Element& h) { return h; };
  parts.to_intrinsic = [](const Element& g) -> std::optional<Element> { return g; };
  parts.equals_ambient = true;
  if (auto* fa = dynamic_cast<const FreeAbelianModel*>(ambient.get())) {
    parts.intrinsic_length = [](const Element& g) { return l1_norm(g.as<IntVector>()); };
    parts.abelian_rank = fa->dimension();
  }
  return parts;
}

MarkedSubgroup::Parts gen_a_subgroup(const ModelPtr& ambient) {
  const GroupModel* model = ambient.get();
  if (auto* bs = dynamic_cast<const BaumslagSolitarModel*>(model)) {
    (void)bs;
    return cyclic_subgroup("gen-a", ambient, ambient->generator("a"),
                           [](const Element& g) -> std::optional<std::int64_t> {
                             const auto& m = g.as<AffineMap>();
                             if (m.scale_exp != 0 || m.denom_exp != 0) return std::nullopt;
                             return to_int64(m.numerator);
                           });
  }
  if (auto* fa = dynamic_cast<const FreeAbelianModel*>(model)) {
    (void)fa;
    return cyclic_subgroup("gen-a", ambient, ambient->generators()[0].element,
                           [](const Element& g) -> std::optional<std::int64_t> {
                             const auto& c = g.as<IntVector>().coords;
                             for (std::size_t i = 1; i < c.size(); ++i) {
                               if (c[i] != 0) return std::nullopt;
                             }
                             return c[0];
                           });
  }
  if (dynamic_cast<const HeisenbergModel*>(model)) {
    return cyclic_subgroup("gen-a", ambient, ambient->generator("x"),
                           [](const Element& g) -> std::optional<std::int64_t> {
                             const auto& m = g.as<HeisenbergMatrix>();
                             if (m.b != 0 || m.c != 0) return std::nullopt;
                             return m.a;
                           });
  }
  if (dynamic_cast<const FreeGroupModel*>(model)) {
    return cyclic_subgroup("gen-a", ambient, ambient->generators()[0].element,
                           [](const Element& g) -> std::optional<std::int64_t> {
                             const auto& w = g.as<ReducedWord>().letters;
                             if (w.empty()) return 0;
                             for (auto l : w) {
                               if (l != w.front() || std::abs(l) != 1) return std::nullopt;
                             }
                             return w.front() > 0 ? static_cast<std::int64_t>(w.size())
                                                  : -static_cast<std::int64_t>(w.size());
                           });
  }
  throw InvalidArgument("subgroup \"gen-a\" is not supported in " + ambient->name());
}

MarkedSubgroup::Parts make_subgroup_parts(const ParsedIdentifier& id, const ModelPtr& ambient);

MarkedSubgroup::Parts product_subgroup(const ParsedIdentifier& left_id, const ParsedIdentifier& right_id,
                                       const ModelPtr& ambient, std::string name) {
  auto* prod = dynamic_cast<const ProductModel*>(ambient.get());
  if (!prod) throw InvalidArgument("subgroup \"" + name + "\" requires a direct product ambient group");
  auto left = std::make_shared<MarkedSubgroup>(make_subgroup_parts(left_id, prod->left()));
  auto right = std::make_shared<MarkedSubgroup>(make_subgroup_parts(right_id, prod->right()));

  MarkedSubgroup::Parts parts;
  parts.name = std::move(name);
  parts.ambient = ambient;
  parts.equals_ambient = left->equals_ambient() && right->equals_ambient();

  const bool abelian = left->abelian_rank() && right->abelian_rank();
  if (abelian) {
    const std::size_t dl = *left->abelian_rank();
    const std::size_t dr = *right->abelian_rank();
    parts.abelian_rank = dl + dr;
    parts.intrinsic = free_abelian(dl + dr);
    parts.embed = [left, right, dl](const Element& h) {
      const auto& c = h.as<IntVector>().coords;
      std::span<const std::int64_t> all(c);
      return ProductModel::pair(left->from_coordinates(all.subspan(0, dl)),
                                right->from_coordinates(all.subspan(dl)));
    };
    parts.to_intrinsic = [left, right](const Element& g) -> std::optional<Element> {
      const auto& p = g.as<ProductPair>().parts;
      if (!left->contains(p[0]) || !right->contains(p[1])) return std::nullopt;
      auto c = left->coordinates(p[0]);
      auto rc = right->coordinates(p[1]);
      c.insert(c.end(), rc.begin(), rc.end());
      return Element(IntVector{std::move(c)});
    };
  } else {
    parts.intrinsic = direct_product(left->intrinsic_ptr(), right->intrinsic_ptr());
    parts.embed = [left, right](const Element& h) {
      const auto& p = h.as<ProductPair>().parts;
      return ProductModel::pair(left->embed(p[0]), right->embed(p[1]));
    };
    parts.to_intrinsic = [left, right](const Element& g) -> std::optional<Element> {
      const auto& p = g.as<ProductPair>().parts;
      auto l = left->to_intrinsic(p[0]);
      auto r = right->to_intrinsic(p[1]);
      if (!l || !r) return std::nullopt;
      return ProductModel::pair(std::move(*l), std::move(*r));
    };
  }
  if (left->has_closed_form_length() && right->has_closed_form_length()) {
    parts.intrinsic_length = [left, right](const Element& g) {
      const auto& p = g.as<ProductPair>().parts;
      return left->intrinsic_length(p[0]) + right->intrinsic_length(p[1]);
    };
  }
  return parts;
}

MarkedSubgroup::Parts make_subgroup_parts(const ParsedIdentifier& id, const ModelPtr& ambient) {
  if (!id.args.empty()) {
    if (id.head != "product") throw InvalidArgument("unknown subgroup constructor \"" + id.head + "\"");
    return product_subgroup(id.args[0], id.args[1], ambient, id.to_string());
  }
  if (!id.params.empty()) throw InvalidArgument("subgroup \"" + id.head + "\" takes no parameters");
  if (id.head == "full") return full_subgroup(ambient);
  if (id.head == "gen-a") return gen_a_subgroup(ambient);
  if (id.head == "center") {
    if (!dynamic_cast<const HeisenbergModel*>(ambient.get())) {
      throw InvalidArgument("subgroup \"center\" is only supported in heisenberg");
    }
    return cyclic_subgroup("center", ambient, ambient->generator("z"),
                           [](const Element& g) -> std::optional<std::int64_t> {
                             const auto& m = g.as<HeisenbergMatrix>();
                             if (m.a != 0 || m.c != 0) return std::nullopt;
                             return m.b;
                           });
  }
  if (id.head == "diagonal") {
    auto* fa = dynamic_cast<const FreeAbelianModel*>(ambient.get());
    if (!fa || fa->dimension() < 2) {
      throw InvalidArgument("subgroup \"diagonal\" needs free-abelian:n with n >= 2");
    }
    IntVector ones{std::vector<std::int64_t>(fa->dimension(), 1)};
    return cyclic_subgroup("diagonal", ambient, Element(ones),
                           [](const Element& g) -> std::optional<std::int64_t> {
                             const auto& c = g.as<IntVector>().coords;
                             for (auto x : c) {
                               if (x != c.front()) return std::nullopt;
                             }
                             return c.front();
                           });
  }
  if (id.head == "product-left") {
    auto parts = product_subgroup(ParsedIdentifier{"full", {}, {}}, ParsedIdentifier{"gen-a", {}, {}},
                                  ambient, "product-left");
    return parts;
  }
  throw InvalidArgument("unknown subgroup \"" + id.head + "\"");
}

ModelPtr build_group(const ParsedIdentifier& id) {
  if (!id.args.empty()) {
    if (id.head != "product") throw InvalidArgument("unknown group constructor \"" + id.head + "\"");
    return direct_product(build_group(id.args[0]), build_group(id.args[1]));
  }
  return builtin(id.head, id.params);
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t Element::hash() const {
  std::size_t seed = payload_.index();
  hash_mix(seed, std::visit(PayloadHasher{}, payload_));
  return seed;
}

void GroupModel::add_generator(const std::string& name, Element x) {
  const std::size_t index = generators_.size();
  Element x_inv = inverse(x);
  generators_.push_back(Generator{name, std::move(x), index + 1});
  generators_.push_back(Generator{name + "^-1", std::move(x_inv), index});
}

std::size_t GroupModel::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  throw InvalidArgument("model " + this->name() + " has no generator named \"" + name + "\"");
}

Element GroupModel::generator(const std::string& name) const {
  return generators_[generator_index(name)].element;
}

Element GroupModel::evaluate(std::span<const std::size_t> word) const {
  Element out = identity();
  for (auto i : word) out = multiply(out, generators_.at(i).element);
  return out;
}

Element GroupModel::evaluate(std::span<const std::string> names) const {
  Element out = identity();
  for (const auto& n : names) out = multiply(out, generator(n));
  return out;
}

Element GroupModel::power(const Element& g, std::int64_t k) const {
  Element base = k < 0 ? inverse(g) : g;
  auto e = static_cast<std::uint64_t>(k < 0 ? -k : k);
  Element out = identity();
  while (e != 0) {
    if (e & 1U) out = multiply(out, base);
    e >>= 1U;
    if (e != 0) base = multiply(base, base);
  }
  return out;
}

ModelPtr free_abelian(std::size_t rank) {
  if (rank == 0) throw InvalidArgument("free-abelian rank must be positive");
  return std::make_shared<FreeAbelianModel>(rank);
}

ModelPtr free_group(std::size_t rank) {
  if (rank == 0) throw InvalidArgument("free group rank must be positive");
  return std::make_shared<FreeGroupModel>(rank);
}

ModelPtr heisenberg() { return std::make_shared<HeisenbergModel>(); }

ModelPtr bs1p(std::int64_t p) {
  if (p < 2) throw InvalidArgument("bs1p requires p >= 2, got " + std::to_string(p));
  return std::make_shared<BaumslagSolitarModel>(p);
}

ModelPtr direct_product(ModelPtr left, ModelPtr right) {
  if (!left || !right) throw InvalidArgument("direct_product of a null model");
  return std::make_shared<ProductModel>(std::move(left), std::move(right));
}

ModelPtr builtin(const std::string& family, std::span<const std::int64_t> params) {
  auto want = [&](std::size_t count) {
    if (params.size() != count) {
      throw InvalidArgument("group \"" + family + "\" expects " + std::to_string(count) + " parameter(s)");
    }
  };
  auto positive = [&](std::int64_t v) {
    if (v < 1) throw InvalidArgument("group \"" + family + "\" needs a positive parameter");
    return static_cast<std::size_t>(v);
  };
  if (family == "free-abelian") {
    want(1);
    return free_abelian(positive(params[0]));
  }
  if (family == "free") {
    want(1);
    return free_group(positive(params[0]));
  }
  if (family == "heisenberg") {
    want(0);
    return heisenberg();
  }
  if (family == "bs1p") {
    want(1);
    return bs1p(params[0]);
  }
  throw InvalidArgument("unknown group \"" + family + "\"");
}

ModelPtr parse_group(const std::string& identifier) { return build_group(parse_identifier(identifier)); }

MarkedSubgroup::MarkedSubgroup(Parts parts) : parts_(std::move(parts)) {}

std::vector<std::int64_t> MarkedSubgroup::coordinates(const Element& g) const {
  if (!parts_.abelian_rank) throw InvalidArgument("subgroup " + name() + " has no abelian coordinates");
  auto h = parts_.to_intrinsic(g);
  if (!h) throw InvalidArgument("element is not in subgroup " + name());
  return h->as<IntVector>().coords;
}

Element MarkedSubgroup::from_coordinates(std::span<const std::int64_t> coords) const {
  return parts_.embed(Element(IntVector{{coords.begin(), coords.end()}}));
}

SubgroupPtr marked_subgroup(const std::string& name, const ModelPtr& ambient) {
  return std::make_shared<MarkedSubgroup>(make_subgroup_parts(parse_identifier(name), ambient));
}

}  // namespace subdist
