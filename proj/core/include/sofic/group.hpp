#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sofic/errors.hpp"

namespace sofic {

struct Letter {
  int32_t gen = 0;
  int8_t sign = 1;  // +1 or -1
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Word in the generators of some group. Meaning is relative to the group the
// callers pair it with; the identity is the empty word.
struct Word {
  std::vector<Letter> ls;

  static Word one() { return {}; }
  static Word single(int gen, int sign = 1) {
    return Word{{Letter{gen, static_cast<int8_t>(sign)}}};
  }

  bool empty() const { return ls.empty(); }
  size_t size() const { return ls.size(); }

  friend auto operator<=>(const Word&, const Word&) = default;
};

Word concat(const Word& a, const Word& b);
// Reverse with flipped signs; no reduction.
Word raw_inverse(const Word& a);

enum class GroupKind { FiniteTable, Integer, Free, FreeProduct, Amalgam };

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// One class for the five supported group kinds. Words are sequences of
// generator letters; normal_form is canonical per kind, so Words compare and
// key maps reliably after reduction.
//
// Generator naming: FiniteTable elements are e, g1, .., g_{m-1} and the
// letters are g1..g_{m-1}; Integer has the single letter g; Free has
// x1..xr. Product kinds qualify factor letters as "<factor>.<letter>" and
// require distinct factor names, so qualified names stay unambiguous.
class Group : public std::enable_shared_from_this<Group> {
 public:
  // table[i][j] = index of product i*j; index 0 is the identity. The table
  // is validated as a group (identity, inverses, associativity).
  static GroupPtr finite_table(std::string name, std::vector<std::vector<int>> table);
  static GroupPtr integer(std::string name);
  static GroupPtr free_group(std::string name, int rank);
  static GroupPtr free_product(std::string name, GroupPtr left, GroupPtr right);
  // Factors and subgroup must be FiniteTable. embed_* map subgroup element
  // indices into each factor and must be injective homomorphisms fixing e.
  static GroupPtr amalgam(std::string name, GroupPtr left, GroupPtr right, GroupPtr sub,
                          std::vector<int> embed_left, std::vector<int> embed_right);

  GroupKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  int generator_count() const { return static_cast<int>(gen_names_.size()); }
  const std::vector<std::string>& generator_names() const { return gen_names_; }
  // Accepts the exact listed name, or an unqualified suffix when unique.
  int generator_index(const std::string& gname) const;

  Word normal_form(const Word& w) const;
  Word multiply(const Word& a, const Word& b) const;
  Word inverse(const Word& w) const;
  bool is_identity(const Word& w) const;

  // Maximal same-factor runs of w as (side, local word) pairs; side is 0/1
  // for product kinds and 0 otherwise. No reduction is applied.
  std::vector<std::pair<int, Word>> syllables(const Word& w) const;

  // FiniteTable interface; throws GroupKindError on other kinds.
  int order() const;
  int table_mul(int x, int y) const;
  int table_inv(int x) const;
  Word element_word(int x) const;           // canonical word of element x
  int word_element(const Word& w) const;    // any word -> element index

  // Product interface (FreeProduct and Amalgam).
  GroupPtr left_factor() const;
  GroupPtr right_factor() const;
  int factor_of_gen(int gen) const;          // 0 = left, 1 = right
  Letter to_local(Letter l) const;           // product letter -> factor letter
  Letter to_global(int side, Letter l) const;

  // Amalgam interface.
  GroupPtr amalgam_subgroup() const;
  const std::vector<int>& embedding(int side) const;
  // Index of the representative of coset H*x in the side's factor; the
  // least element index in the coset, fixed at construction.
  int coset_rep(int side, int x) const;
  // Subgroup index of factor element x, or -1 when x is outside the image.
  int subgroup_index(int side, int x) const;

 private:
  Group() = default;

  Word normal_form_free_product(const Word& w) const;
  Word normal_form_amalgam(const Word& w) const;
  int letter_element(const Group& fac, Letter local) const;

  GroupKind kind_ = GroupKind::Integer;
  std::string name_;
  std::vector<std::string> gen_names_;

  // FiniteTable
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;

  // products
  GroupPtr left_, right_;
  int left_gen_count_ = 0;

  // amalgam
  GroupPtr sub_;
  std::vector<int> embed_[2];
  std::vector<int> rep_[2];        // per factor element: least index in its H-coset
  std::vector<int> sub_index_[2];  // per factor element: H index or -1
};

// Breadth-first product closure of F within radius n.
struct BallStep {
  int parent = -1;  // index into elements; -1 for the identity
  int step = -1;    // index into alphabet; -1 for the identity
};

struct Ball {
  std::vector<Word> elements;  // normal forms in discovery order; [0] = e
  std::vector<BallStep> from;  // elements[i] == elements[from[i].parent] * alphabet[from[i].step]
  std::map<Word, int> index;
  std::vector<Word> alphabet;  // normal forms of F then unseen inverses
  int f_count = 0;             // prefix of alphabet coming from F itself
  int radius = 0;
};

// Elements reachable as products of at most n factors from F and inverses.
// Throws BallOverflow past cap distinct elements.
Ball ball(const Group& g, const std::vector<Word>& F, int n, size_t cap = 1000000);

std::string format_word(const Group& g, const Word& w);
// Tokens separated by spaces or '*'; each NAME or NAME^k; "e" and "1" mean
// the identity. Returns the raw (unreduced) word.
Word parse_word(const Group& g, const std::string& text);

}  // namespace sofic
