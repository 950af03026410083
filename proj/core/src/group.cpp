#include "sofic/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace sofic {

namespace {

void check_letter(const Group& g, Letter l) {
  if (l.gen < 0 || l.gen >= g.generator_count())
    throw Error("letter index out of range for group " + g.name());
  if (l.sign != 1 && l.sign != -1) throw Error("letter sign must be +1 or -1");
}

}  // namespace

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.ls.insert(r.ls.end(), b.ls.begin(), b.ls.end());
  return r;
}

Word raw_inverse(const Word& a) {
  Word r;
  r.ls.reserve(a.ls.size());
  for (auto it = a.ls.rbegin(); it != a.ls.rend(); ++it)
    r.ls.push_back(Letter{it->gen, static_cast<int8_t>(-it->sign)});
  return r;
}

GroupPtr Group::finite_table(std::string name, std::vector<std::vector<int>> table) {
  const int m = static_cast<int>(table.size());
  if (m < 1) throw ParseError("finite table is empty");
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != m) throw ParseError("finite table is not square");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (table[i][j] < 0 || table[i][j] >= m) throw ParseError("table entry out of range");
  for (int i = 0; i < m; ++i)
    if (table[0][i] != i || table[i][0] != i)
      throw ParseError("table index 0 is not an identity");
  for (int i = 0; i < m; ++i) {
    std::vector<char> row(m, 0), col(m, 0);
    for (int j = 0; j < m; ++j) {
      row[table[i][j]] = 1;
      col[table[j][i]] = 1;
    }
    for (int j = 0; j < m; ++j)
      if (!row[j] || !col[j]) throw ParseError("table is not a latin square");
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          throw ParseError("table is not associative");

  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::FiniteTable;
  g->name_ = std::move(name);
  g->table_ = std::move(table);
  g->inv_.assign(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (g->table_[i][j] == 0) g->inv_[i] = j;
  for (int i = 1; i < m; ++i) g->gen_names_.push_back("g" + std::to_string(i));
  return g;
}

GroupPtr Group::integer(std::string name) {
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Integer;
  g->name_ = std::move(name);
  g->gen_names_ = {"g"};
  return g;
}

GroupPtr Group::free_group(std::string name, int rank) {
  if (rank < 1) throw ParseError("free group rank must be positive");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Free;
  g->name_ = std::move(name);
  for (int i = 1; i <= rank; ++i) g->gen_names_.push_back("x" + std::to_string(i));
  return g;
}

GroupPtr Group::free_product(std::string name, GroupPtr left, GroupPtr right) {
  if (!left || !right) throw ParseError("free product factor is null");
  if (left->name() == right->name())
    throw ParseError("free product factors must carry distinct names; declare two copies");
  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::FreeProduct;
  g->name_ = std::move(name);
  g->left_ = left;
  g->right_ = right;
  g->left_gen_count_ = left->generator_count();
  for (const auto& n : left->generator_names()) g->gen_names_.push_back(left->name() + "." + n);
  for (const auto& n : right->generator_names()) g->gen_names_.push_back(right->name() + "." + n);
  return g;
}

GroupPtr Group::amalgam(std::string name, GroupPtr left, GroupPtr right, GroupPtr sub,
                        std::vector<int> embed_left, std::vector<int> embed_right) {
  if (!left || !right || !sub) throw ParseError("amalgam component is null");
  if (left->kind() != GroupKind::FiniteTable || right->kind() != GroupKind::FiniteTable ||
      sub->kind() != GroupKind::FiniteTable)
    throw GroupKindError("amalgam factors and subgroup must be finite table groups");
  if (left->name() == right->name())
    throw ParseError("amalgam factors must carry distinct names; declare two copies");

  auto g = std::shared_ptr<Group>(new Group());
  g->kind_ = GroupKind::Amalgam;
  g->name_ = std::move(name);
  g->left_ = left;
  g->right_ = right;
  g->sub_ = sub;
  g->left_gen_count_ = left->generator_count();
  g->embed_[0] = std::move(embed_left);
  g->embed_[1] = std::move(embed_right);
  for (const auto& n : left->generator_names()) g->gen_names_.push_back(left->name() + "." + n);
  for (const auto& n : right->generator_names()) g->gen_names_.push_back(right->name() + "." + n);

  const int hs = sub->order();
  for (int side = 0; side < 2; ++side) {
    const Group& fac = side ? *right : *left;
    const auto& emb = g->embed_[side];
    const int m = fac.order();
    if (static_cast<int>(emb.size()) != hs)
      throw ParseError("embedding length differs from subgroup order");
    for (const int v : emb)
      if (v < 0 || v >= m) throw ParseError("embedding value out of range");
    if (emb[0] != 0) throw ParseError("embedding must fix the identity");
    g->sub_index_[side].assign(m, -1);
    for (int h = 0; h < hs; ++h) {
      if (g->sub_index_[side][emb[h]] != -1) throw ParseError("embedding is not injective");
      g->sub_index_[side][emb[h]] = h;
    }
    for (int i = 0; i < hs; ++i)
      for (int j = 0; j < hs; ++j)
        if (fac.table_mul(emb[i], emb[j]) != emb[sub->table_mul(i, j)])
          throw ParseError("embedding is not a homomorphism");
    g->rep_[side].assign(m, 0);
    for (int x = 0; x < m; ++x) {
      int best = m;
      for (int h = 0; h < hs; ++h) best = std::min(best, fac.table_mul(emb[h], x));
      g->rep_[side][x] = best;
    }
  }
  return g;
}

int Group::generator_index(const std::string& gname) const {
  for (int i = 0; i < generator_count(); ++i)
    if (gen_names_[i] == gname) return i;
  int found = -1;
  const std::string suffix = "." + gname;
  for (int i = 0; i < generator_count(); ++i) {
    const std::string& n = gen_names_[i];
    if (n.size() > suffix.size() && n.compare(n.size() - suffix.size(), suffix.size(), suffix) == 0) {
      if (found != -1)
        throw ParseError("generator name '" + gname + "' is ambiguous in " + name_);
      found = i;
    }
  }
  if (found == -1) throw ParseError("unknown generator '" + gname + "' in " + name_);
  return found;
}

Word Group::normal_form(const Word& w) const {
  switch (kind_) {
    case GroupKind::FiniteTable:
      return element_word(word_element(w));
    case GroupKind::Integer: {
      long long k = 0;
      for (const Letter l : w.ls) {
        check_letter(*this, l);
        k += l.sign;
      }
      Word r;
      const int8_t s = k >= 0 ? int8_t{1} : int8_t{-1};
      for (long long i = 0; i < std::llabs(k); ++i) r.ls.push_back(Letter{0, s});
      return r;
    }
    case GroupKind::Free: {
      Word r;
      for (const Letter l : w.ls) {
        check_letter(*this, l);
        if (!r.ls.empty() && r.ls.back().gen == l.gen && r.ls.back().sign == -l.sign)
          r.ls.pop_back();
        else
          r.ls.push_back(l);
      }
      return r;
    }
    case GroupKind::FreeProduct:
      return normal_form_free_product(w);
    case GroupKind::Amalgam:
      return normal_form_amalgam(w);
  }
  throw Error("unreachable");
}

Word Group::normal_form_free_product(const Word& w) const {
  struct Chunk {
    int side;
    Word local;
  };
  std::vector<Chunk> st;
  for (const Letter l : w.ls) {
    check_letter(*this, l);
    const int side = factor_of_gen(l.gen);
    const Group& fac = side ? *right_ : *left_;
    const Letter loc = to_local(l);
    if (!st.empty() && st.back().side == side) {
      Word merged = st.back().local;
      merged.ls.push_back(loc);
      merged = fac.normal_form(merged);
      if (merged.empty())
        st.pop_back();
      else
        st.back().local = std::move(merged);
    } else {
      Word nf = fac.normal_form(Word::single(loc.gen, loc.sign));
      if (!nf.empty()) st.push_back({side, std::move(nf)});
    }
  }
  Word out;
  for (const auto& c : st)
    for (const Letter l : c.local.ls) out.ls.push_back(to_global(c.side, l));
  return out;
}

Word Group::normal_form_amalgam(const Word& w) const {
  // Scan right to left keeping the suffix's normal form h * t_1 .. t_k.
  // ts holds the t_i with the leftmost at the back.
  int h = 0;
  std::vector<std::pair<int, int>> ts;  // (side, factor element)
  for (auto it = w.ls.rbegin(); it != w.ls.rend(); ++it) {
    check_letter(*this, *it);
    const int side = factor_of_gen(it->gen);
    const Group& fac = side ? *right_ : *left_;
    const int x = letter_element(fac, to_local(*it));
    int y = fac.table_mul(x, embed_[side][h]);
    if (!ts.empty() && ts.back().first == side) {
      y = fac.table_mul(y, ts.back().second);
      ts.pop_back();
    }
    const int hy = sub_index_[side][y];
    if (hy >= 0) {
      h = hy;
    } else {
      const int t = rep_[side][y];
      h = sub_index_[side][fac.table_mul(y, fac.table_inv(t))];
      ts.push_back({side, t});
    }
  }
  Word out;
  if (h != 0) out.ls.push_back(Letter{embed_[0][h] - 1, 1});
  for (auto it = ts.rbegin(); it != ts.rend(); ++it)
    out.ls.push_back(to_global(it->first, Letter{it->second - 1, 1}));
  return out;
}

int Group::letter_element(const Group& fac, Letter local) const {
  int x = local.gen + 1;
  if (local.sign < 0) x = fac.table_inv(x);
  return x;
}

Word Group::multiply(const Word& a, const Word& b) const { return normal_form(concat(a, b)); }

Word Group::inverse(const Word& w) const { return normal_form(raw_inverse(w)); }

bool Group::is_identity(const Word& w) const { return normal_form(w).empty(); }

std::vector<std::pair<int, Word>> Group::syllables(const Word& w) const {
  std::vector<std::pair<int, Word>> out;
  const bool product = kind_ == GroupKind::FreeProduct || kind_ == GroupKind::Amalgam;
  for (const Letter l : w.ls) {
    check_letter(*this, l);
    const int side = product ? factor_of_gen(l.gen) : 0;
    const Letter loc = product ? to_local(l) : l;
    if (out.empty() || out.back().first != side) out.push_back({side, Word{}});
    out.back().second.ls.push_back(loc);
  }
  return out;
}

int Group::order() const {
  if (kind_ != GroupKind::FiniteTable) throw GroupKindError("order(): not a finite table group");
  return static_cast<int>(table_.size());
}

int Group::table_mul(int x, int y) const {
  if (kind_ != GroupKind::FiniteTable) throw GroupKindError("table_mul(): not a finite table group");
  if (x < 0 || y < 0 || x >= order() || y >= order()) throw Error("element index out of range");
  return table_[x][y];
}

int Group::table_inv(int x) const {
  if (kind_ != GroupKind::FiniteTable) throw GroupKindError("table_inv(): not a finite table group");
  if (x < 0 || x >= order()) throw Error("element index out of range");
  return inv_[x];
}

Word Group::element_word(int x) const {
  if (kind_ != GroupKind::FiniteTable)
    throw GroupKindError("element_word(): not a finite table group");
  if (x < 0 || x >= order()) throw Error("element index out of range");
  if (x == 0) return Word::one();
  return Word::single(x - 1);
}

int Group::word_element(const Word& w) const {
  if (kind_ != GroupKind::FiniteTable)
    throw GroupKindError("word_element(): not a finite table group");
  int x = 0;
  for (const Letter l : w.ls) {
    check_letter(*this, l);
    x = table_[x][letter_element(*this, l)];
  }
  return x;
}

GroupPtr Group::left_factor() const {
  if (!left_) throw GroupKindError("left_factor(): not a product group");
  return left_;
}

GroupPtr Group::right_factor() const {
  if (!right_) throw GroupKindError("right_factor(): not a product group");
  return right_;
}

int Group::factor_of_gen(int gen) const {
  if (kind_ != GroupKind::FreeProduct && kind_ != GroupKind::Amalgam)
    throw GroupKindError("factor_of_gen(): not a product group");
  if (gen < 0 || gen >= generator_count()) throw Error("letter index out of range");
  return gen < left_gen_count_ ? 0 : 1;
}

Letter Group::to_local(Letter l) const {
  const int side = factor_of_gen(l.gen);
  return Letter{l.gen - (side ? left_gen_count_ : 0), l.sign};
}

Letter Group::to_global(int side, Letter l) const {
  if (kind_ != GroupKind::FreeProduct && kind_ != GroupKind::Amalgam)
    throw GroupKindError("to_global(): not a product group");
  const Group& fac = side ? *right_ : *left_;
  check_letter(fac, l);
  return Letter{l.gen + (side ? left_gen_count_ : 0), l.sign};
}

GroupPtr Group::amalgam_subgroup() const {
  if (kind_ != GroupKind::Amalgam) throw GroupKindError("amalgam_subgroup(): not an amalgam");
  return sub_;
}

const std::vector<int>& Group::embedding(int side) const {
  if (kind_ != GroupKind::Amalgam) throw GroupKindError("embedding(): not an amalgam");
  return embed_[side ? 1 : 0];
}

int Group::coset_rep(int side, int x) const {
  if (kind_ != GroupKind::Amalgam) throw GroupKindError("coset_rep(): not an amalgam");
  const Group& fac = side ? *right_ : *left_;
  if (x < 0 || x >= fac.order()) throw Error("element index out of range");
  return rep_[side ? 1 : 0][x];
}

int Group::subgroup_index(int side, int x) const {
  if (kind_ != GroupKind::Amalgam) throw GroupKindError("subgroup_index(): not an amalgam");
  const Group& fac = side ? *right_ : *left_;
  if (x < 0 || x >= fac.order()) throw Error("element index out of range");
  return sub_index_[side ? 1 : 0][x];
}

Ball ball(const Group& g, const std::vector<Word>& F, int n, size_t cap) {
  if (n < 0) throw Error("ball radius must be nonnegative");
  Ball B;
  B.radius = n;
  for (const Word& f : F) {
    Word nf = g.normal_form(f);
    if (std::find(B.alphabet.begin(), B.alphabet.end(), nf) == B.alphabet.end())
      B.alphabet.push_back(std::move(nf));
  }
  B.f_count = static_cast<int>(B.alphabet.size());
  for (int i = 0; i < B.f_count; ++i) {
    Word inv = g.inverse(B.alphabet[i]);
    if (std::find(B.alphabet.begin(), B.alphabet.end(), inv) == B.alphabet.end())
      B.alphabet.push_back(std::move(inv));
  }
  B.elements.push_back(Word::one());
  B.from.push_back(BallStep{-1, -1});
  B.index[Word::one()] = 0;
  size_t frontier_begin = 0;
  for (int depth = 1; depth <= n; ++depth) {
    const size_t frontier_end = B.elements.size();
    for (size_t i = frontier_begin; i < frontier_end; ++i)
      for (int a = 0; a < static_cast<int>(B.alphabet.size()); ++a) {
        Word w = g.multiply(B.elements[i], B.alphabet[a]);
        if (B.index.count(w)) continue;
        if (B.elements.size() >= cap)
          throw BallOverflow("ball exceeds element cap of " + std::to_string(cap));
        B.index[w] = static_cast<int>(B.elements.size());
        B.elements.push_back(std::move(w));
        B.from.push_back(BallStep{static_cast<int>(i), a});
      }
    frontier_begin = frontier_end;
    if (frontier_begin == B.elements.size()) break;
  }
  return B;
}

std::string format_word(const Group& g, const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  size_t i = 0;
  while (i < w.ls.size()) {
    size_t j = i;
    while (j < w.ls.size() && w.ls[j] == w.ls[i]) ++j;
    const long long k = static_cast<long long>(j - i) * w.ls[i].sign;
    if (!out.empty()) out += "*";
    check_letter(g, w.ls[i]);
    out += g.generator_names()[w.ls[i].gen];
    if (k != 1) out += "^" + std::to_string(k);
    i = j;
  }
  return out;
}

Word parse_word(const Group& g, const std::string& text) {
  std::vector<std::string> toks;
  std::string cur;
  for (const char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*') {
      if (!cur.empty()) toks.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) toks.push_back(std::move(cur));

  Word w;
  for (const std::string& tok : toks) {
    if (tok == "e" || tok == "1") continue;
    const auto caret = tok.find('^');
    const std::string nm = tok.substr(0, caret);
    long long k = 1;
    if (caret != std::string::npos) {
      try {
        size_t used = 0;
        k = std::stoll(tok.substr(caret + 1), &used);
        if (used != tok.size() - caret - 1) throw ParseError("bad exponent in '" + tok + "'");
      } catch (const ParseError&) {
        throw;
      } catch (const std::exception&) {
        throw ParseError("bad exponent in '" + tok + "'");
      }
    }
    const int gi = g.generator_index(nm);
    const int8_t s = k >= 0 ? int8_t{1} : int8_t{-1};
    for (long long i = 0; i < std::llabs(k); ++i) w.ls.push_back(Letter{gi, s});
  }
  return w;
}

}  // namespace sofic
