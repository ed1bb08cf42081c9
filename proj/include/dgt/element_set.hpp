#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgt {

/// Subset of a fixed ground set {0, ..., n-1}, packed into 64-bit words.
/// The universe size travels with the set; mixing sets over different
/// universes is a logic error and throws.
class ElementSet {
 public:
  ElementSet() : n_(0) {}

  explicit ElementSet(int universe) : n_(universe), w_((universe + 63) / 64, 0) {
    if (universe < 0) throw std::invalid_argument("ElementSet: negative universe");
  }

  ElementSet(int universe, std::initializer_list<int> elems) : ElementSet(universe) {
    for (int e : elems) insert(e);
  }

  static ElementSet full(int universe) {
    ElementSet s(universe);
    for (std::size_t i = 0; i < s.w_.size(); ++i) s.w_[i] = ~std::uint64_t{0};
    s.mask_tail();
    return s;
  }

  int universe() const { return n_; }

  bool test(int e) const {
    check(e);
    return (w_[e >> 6] >> (e & 63)) & 1;
  }

  void insert(int e) {
    check(e);
    w_[e >> 6] |= std::uint64_t{1} << (e & 63);
  }

  void erase(int e) {
    check(e);
    w_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
  }

  int size() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  ElementSet operator&(const ElementSet& o) const { return zip(o, [](auto a, auto b) { return a & b; }); }
  ElementSet operator|(const ElementSet& o) const { return zip(o, [](auto a, auto b) { return a | b; }); }
  /// Set difference: elements of *this not in o.
  ElementSet operator-(const ElementSet& o) const { return zip(o, [](auto a, auto b) { return a & ~b; }); }

  ElementSet complement() const {
    ElementSet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
    r.mask_tail();
    return r;
  }

  int intersection_size(const ElementSet& o) const {
    check_universe(o);
    int c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
    return c;
  }

  bool intersects(const ElementSet& o) const {
    check_universe(o);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  bool subset_of(const ElementSet& o) const {
    check_universe(o);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  /// Lowest member, or -1 if empty.
  int lowest() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<int>(i * 64 + std::countr_zero(w_[i]));
    return -1;
  }

  /// Highest member, or -1 if empty.
  int highest() const {
    for (std::size_t i = w_.size(); i-- > 0;)
      if (w_[i]) return static_cast<int>(i * 64 + 63 - std::countl_zero(w_[i]));
    return -1;
  }

  /// The `count` lowest members as a new set.  Throws if fewer are present.
  ElementSet take_lowest(int count) const {
    ElementSet r(n_);
    int left = count;
    for (int e : elements()) {
      if (left == 0) break;
      r.insert(e);
      --left;
    }
    if (left != 0) throw std::invalid_argument("ElementSet::take_lowest: not enough elements");
    return r;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t w = w_[i];
      while (w) {
        out.push_back(static_cast<int>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  /// Image under a permutation of the ground set (perm[old] = new index).
  ElementSet relabeled(const std::vector<int>& perm) const {
    ElementSet r(n_);
    for (int e : elements()) r.insert(perm[static_cast<std::size_t>(e)]);
    return r;
  }

  /// Image under the transposition (u v).
  ElementSet swapped(int u, int v) const {
    ElementSet r = *this;
    bool bu = test(u), bv = test(v);
    if (bu != bv) {
      if (bu) {
        r.erase(u);
        r.insert(v);
      } else {
        r.erase(v);
        r.insert(u);
      }
    }
    return r;
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator!=(const ElementSet& a, const ElementSet& b) { return !(a == b); }
  friend bool operator<(const ElementSet& a, const ElementSet& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.w_ < b.w_;
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
    return s + "}";
  }

 private:
  void check(int e) const {
    if (e < 0 || e >= n_) throw std::out_of_range("ElementSet: element outside universe");
  }
  void check_universe(const ElementSet& o) const {
    if (n_ != o.n_) throw std::invalid_argument("ElementSet: universe mismatch");
  }
  void mask_tail() {
    if (n_ % 64 != 0 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
  template <typename F>
  ElementSet zip(const ElementSet& o, F f) const {
    check_universe(o);
    ElementSet r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = f(w_[i], o.w_[i]);
    return r;
  }

  int n_;
  std::vector<std::uint64_t> w_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const {
    std::size_t h = std::hash<int>{}(s.universe());
    for (auto w : s.words()) h = h * 1099511628211ULL + std::hash<std::uint64_t>{}(w);
    return h;
  }
};

}  // namespace dgt
