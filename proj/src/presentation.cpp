#include "nilkit/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nilkit {

Word free_reduce(Word w) {
  Word out;
  for (auto& t : w) {
    if (t.exp == 0) continue;
    if (!out.empty() && out.back().gen == t.gen) {
      out.back().exp += t.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(t);
    }
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

int NilpotentPresentation::index_of(const std::string& gen_name) const {
  for (int i = 0; i < ngens(); ++i)
    if (gens[i].name == gen_name) return i;
  return -1;
}

const Word* NilpotentPresentation::commutator_word(int j, int i) const {
  auto it = comm.find({j, i});
  if (it == comm.end() || it->second.empty()) return nullptr;
  return &it->second;
}

void NilpotentPresentation::validate() const {
  const int n = ngens();
  if (n == 0) throw InvalidArgument("presentation has no generators");
  for (int i = 0; i < n; ++i) {
    if (gens[i].name.empty()) throw InvalidArgument("unnamed generator");
    for (int j = i + 1; j < n; ++j)
      if (gens[i].name == gens[j].name)
        throw InvalidArgument("duplicate generator name " + gens[i].name);
    // order 1 never comes from the parser but arises in quotient presentations
    if (gens[i].order < 0)
      throw InvalidArgument("generator order must be positive (or absent): " + gens[i].name);
    for (const Term& t : gens[i].power_tail) {
      if (t.gen <= i)
        throw OrderingViolation("power relation for " + gens[i].name +
                                " references generator not above it");
      if (t.gen >= n) throw InvalidArgument("power tail references unknown generator");
      if (t.exp == 0) throw InvalidArgument("zero exponent in power tail");
    }
    if (gens[i].order == 0 && !gens[i].power_tail.empty())
      throw InvalidArgument("power tail on infinite-order generator " + gens[i].name);
  }
  for (const auto& [pair, w] : comm) {
    auto [j, i] = pair;
    if (!(j > i && i >= 0 && j < n))
      throw OrderingViolation("commutator relation indices must satisfy j > i");
    for (const Term& t : w) {
      if (t.gen <= j)
        throw OrderingViolation("relation [" + gens[j].name + "," + gens[i].name +
                                "] references generator not above " + gens[j].name);
      if (t.gen >= n) throw InvalidArgument("relation references unknown generator");
      if (t.exp == 0) throw InvalidArgument("zero exponent in relation");
      if (gens[t.gen].weight < gens[i].weight + gens[j].weight)
        throw InvalidArgument("weight of " + gens[t.gen].name +
                              " incompatible with relation [" + gens[j].name + "," +
                              gens[i].name + "]");
    }
  }
}

void NilpotentPresentation::infer_weights() {
  const int n = ngens();
  for (auto& g : gens) g.weight = 1;
  // relation values only reference higher indices, so one increasing pass settles
  for (int k = 0; k < n; ++k) {
    for (const auto& [pair, w] : comm) {
      auto [j, i] = pair;
      if (j >= k) continue;
      for (const Term& t : w)
        if (t.gen == k) gens[k].weight = std::max(gens[k].weight, gens[i].weight + gens[j].weight);
    }
  }
  nilpotency_class = 1;
  for (const auto& g : gens) nilpotency_class = std::max(nilpotency_class, g.weight);
}

bool NilpotentPresentation::operator==(const NilpotentPresentation& o) const {
  if (name != o.name || nilpotency_class != o.nilpotency_class || ngens() != o.ngens())
    return false;
  for (int i = 0; i < ngens(); ++i) {
    const auto& a = gens[i];
    const auto& b = o.gens[i];
    if (a.name != b.name || a.order != b.order || a.power_tail != b.power_tail ||
        a.weight != b.weight)
      return false;
  }
  auto nontrivial = [](const std::map<std::pair<int, int>, Word>& m) {
    std::map<std::pair<int, int>, Word> out;
    for (const auto& [k, w] : m)
      if (!w.empty()) out.emplace(k, w);
    return out;
  };
  return nontrivial(comm) == nontrivial(o.comm);
}

// ---------------------------------------------------------------- parsing

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;
  int line = 1, col = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }
  bool eof() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  char get() {
    char c = s[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_space_in_line() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) get();
  }
  std::string ident() {
    skip_space_in_line();
    if (eof() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
      fail("expected identifier");
    std::string out;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      out += get();
    return out;
  }
  Int integer() {
    skip_space_in_line();
    std::string out;
    if (!eof() && (peek() == '-' || peek() == '+')) out += get();
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) out += get();
    return Int(out);
  }
  bool consume(char c) {
    skip_space_in_line();
    if (!eof() && peek() == c) {
      get();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
};

Word parse_word_at(Cursor& cur, const NilpotentPresentation& p) {
  cur.skip_space_in_line();
  if (!cur.eof() && cur.peek() == '1') {
    cur.get();
    return {};
  }
  Word w;
  while (true) {
    int l = cur.line, c = cur.col;
    std::string nm = cur.ident();
    int g = p.index_of(nm);
    if (g < 0) throw ParseError("unknown generator " + nm, l, c);
    Int e = 1;
    if (cur.consume('^')) e = cur.integer();
    if (e != 0) w.push_back({g, e});
    if (!cur.consume('*')) break;
  }
  return free_reduce(w);
}

}  // namespace

Word parse_word(const std::string& text, const NilpotentPresentation& p) {
  Cursor cur{text};
  Word w = parse_word_at(cur, p);
  cur.skip_space_in_line();
  if (!cur.eof()) cur.fail("trailing input after word");
  return w;
}

std::string render_word(const Word& w, const NilpotentPresentation& p) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << "*";
    os << p.gens[w[i].gen].name;
    if (w[i].exp != 1) os << "^" << w[i].exp.get_str();
  }
  return os.str();
}

NilpotentPresentation parse_presentation(const std::string& text) {
  NilpotentPresentation p;
  Cursor cur{text};
  bool have_group = false;
  while (!cur.eof()) {
    cur.skip_space_in_line();
    if (cur.eof()) break;
    if (cur.peek() == '\n') {
      cur.get();
      continue;
    }
    if (cur.peek() == '#') {
      while (!cur.eof() && cur.peek() != '\n') cur.get();
      continue;
    }
    int kw_line = cur.line, kw_col = cur.col;
    std::string kw = cur.ident();
    if (kw == "group") {
      if (have_group) cur.fail("duplicate group line");
      p.name = cur.ident();
      have_group = true;
    } else if (kw == "gen") {
      GeneratorDecl g;
      g.name = cur.ident();
      if (p.index_of(g.name) >= 0) cur.fail("duplicate generator " + g.name);
      cur.skip_space_in_line();
      if (!cur.eof() && std::isalpha(static_cast<unsigned char>(cur.peek()))) {
        std::string kw2 = cur.ident();
        if (kw2 != "order") cur.fail("expected 'order'");
        g.order = cur.integer();
        if (g.order < 2) cur.fail("order must be >= 2");
      }
      p.gens.push_back(std::move(g));
    } else if (kw == "rel") {
      cur.skip_space_in_line();
      if (cur.eof()) cur.fail("incomplete relation");
      if (cur.peek() == '[') {
        cur.get();
        int l1 = cur.line, c1 = cur.col;
        std::string a = cur.ident();
        cur.expect(',');
        std::string b = cur.ident();
        cur.expect(']');
        cur.expect('=');
        int ja = p.index_of(a), ib = p.index_of(b);
        if (ja < 0) throw ParseError("unknown generator " + a, l1, c1);
        if (ib < 0) throw ParseError("unknown generator " + b, l1, c1);
        if (ja <= ib)
          throw OrderingViolation("relation [" + a + "," + b + "]: " + b +
                                  " must precede " + a + " in declaration order");
        Word w = parse_word_at(cur, p);
        for (const Term& t : w)
          if (t.gen <= ja)
            throw OrderingViolation("relation [" + a + "," + b +
                                    "] references generator not above " + a);
        p.comm[{ja, ib}] = std::move(w);
      } else {
        int l1 = cur.line, c1 = cur.col;
        std::string a = cur.ident();
        int ia = p.index_of(a);
        if (ia < 0) throw ParseError("unknown generator " + a, l1, c1);
        cur.expect('^');
        Int e = cur.integer();
        cur.expect('=');
        Word w = parse_word_at(cur, p);
        if (p.gens[ia].order != 0 && p.gens[ia].order != e)
          cur.fail("power relation exponent disagrees with declared order of " + a);
        if (e < 2) cur.fail("power relation exponent must be >= 2");
        for (const Term& t : w)
          if (t.gen <= ia)
            throw OrderingViolation("power relation for " + a +
                                    " references generator not above it");
        p.gens[ia].order = e;
        p.gens[ia].power_tail = std::move(w);
      }
    } else {
      throw ParseError("unknown keyword " + kw, kw_line, kw_col);
    }
    cur.skip_space_in_line();
    if (!cur.eof() && cur.peek() != '\n') cur.fail("trailing input on line");
  }
  if (!have_group) throw ParseError("missing group line", 1, 1);
  p.infer_weights();
  p.validate();
  return p;
}

std::string render_presentation(const NilpotentPresentation& p) {
  std::ostringstream os;
  os << "group " << (p.name.empty() ? "G" : p.name) << "\n";
  for (const auto& g : p.gens) {
    os << "gen " << g.name;
    if (g.order != 0) os << " order " << g.order.get_str();
    os << "\n";
  }
  for (const auto& g : p.gens)
    if (!g.power_tail.empty())
      os << "rel " << g.name << "^" << g.order.get_str() << " = "
         << render_word(g.power_tail, p) << "\n";
  for (const auto& [pair, w] : p.comm) {
    if (w.empty()) continue;
    auto [j, i] = pair;
    os << "rel [" << p.gens[j].name << "," << p.gens[i].name << "] = " << render_word(w, p)
       << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- builtins

namespace {

GeneratorDecl named_gen(std::string name) {
  GeneratorDecl g;
  g.name = std::move(name);
  return g;
}

}  // namespace

NilpotentPresentation heisenberg_presentation() {
  NilpotentPresentation p;
  p.name = "heisenberg";
  for (const char* nm : {"x", "y", "z"}) p.gens.push_back(named_gen(nm));
  p.comm[{1, 0}] = {{2, -1}};  // [y,x] = z^-1, i.e. [x,y] = z
  p.gens[2].definition = CommutatorDefinition{1, 0, -1};
  p.infer_weights();
  p.validate();
  return p;
}

NilpotentPresentation example2_presentation() {
  NilpotentPresentation p;
  p.name = "example2";
  for (const char* nm : {"a", "b", "c"}) p.gens.push_back(named_gen(nm));
  p.gens[2].order = 4;
  p.comm[{1, 0}] = {{2, 2}};  // [a,b] = c^2 and c^-2 = c^2 since c^4 = 1
  p.infer_weights();
  p.validate();
  return p;
}

NilpotentPresentation free_nilpotent_presentation(int nil_class, int rank) {
  if (nil_class < 1 || nil_class > 3)
    throw Unsupported("free_nilpotent supports class 1..3, got " + std::to_string(nil_class));
  if (rank < 1 || rank > 9) throw InvalidArgument("free_nilpotent rank must be 1..9");
  NilpotentPresentation p;
  p.name = "free_nilpotent_" + std::to_string(nil_class) + "_" + std::to_string(rank);
  p.relatively_free = true;
  for (int i = 1; i <= rank; ++i) p.gens.push_back(named_gen("x" + std::to_string(i)));
  // weight-2 generators c_ji = [x_j, x_i], j > i
  std::map<std::pair<int, int>, int> cidx;
  if (nil_class >= 2) {
    for (int j = 1; j < rank; ++j)
      for (int i = 0; i < j; ++i) {
        cidx[{j, i}] = p.ngens();
        GeneratorDecl g;
        g.name = "c" + std::to_string(j + 1) + std::to_string(i + 1);
        g.definition = CommutatorDefinition{j, i, 1};
        p.gens.push_back(std::move(g));
        p.comm[{j, i}] = {{cidx[{j, i}], 1}};
      }
  }
  // weight-3 basic commutators d_jik = [c_ji, x_k] with k >= i
  if (nil_class == 3) {
    std::map<std::tuple<int, int, int>, int> didx;
    for (int j = 1; j < rank; ++j)
      for (int i = 0; i < j; ++i)
        for (int k = i; k < rank; ++k) {
          didx[{j, i, k}] = p.ngens();
          GeneratorDecl g;
          g.name = "d" + std::to_string(j + 1) + std::to_string(i + 1) + std::to_string(k + 1);
          g.definition = CommutatorDefinition{cidx[{j, i}], k, 1};
          p.gens.push_back(std::move(g));
        }
    for (int j = 1; j < rank; ++j)
      for (int i = 0; i < j; ++i)
        for (int k = 0; k < rank; ++k) {
          int c = cidx[{j, i}];
          if (k >= i) {
            p.comm[{c, k}] = {{didx[{j, i, k}], 1}};
          } else {
            // Jacobi in class 3: [c_ji, x_k] = d_jki * d_ikj^-1 for j > i > k
            int d1 = didx[{j, k, i}], d2 = didx[{i, k, j}];
            Word w;
            if (d1 < d2)
              w = {{d1, 1}, {d2, -1}};
            else
              w = {{d2, -1}, {d1, 1}};
            p.comm[{c, k}] = std::move(w);
          }
        }
  }
  p.infer_weights();
  p.validate();
  return p;
}

NilpotentPresentation abelian_presentation(const std::vector<Int>& invariant_factors) {
  if (invariant_factors.empty()) throw InvalidArgument("abelian needs at least one factor");
  NilpotentPresentation p;
  p.name = "abelian";
  for (size_t i = 0; i < invariant_factors.size(); ++i) {
    const Int& d = invariant_factors[i];
    if (d < 0 || d == 1) throw InvalidArgument("invariant factors must be 0 or >= 2");
    GeneratorDecl g;
    g.name = "g" + std::to_string(i + 1);
    g.order = d;
    p.gens.push_back(std::move(g));
  }
  p.infer_weights();
  p.validate();
  return p;
}

NilpotentPresentation builtin(const std::string& spec) {
  std::string s;
  for (char c : spec) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::string head = s, args;
  if (auto pos = s.find(':'); pos != std::string::npos) {
    head = s.substr(0, pos);
    args = s.substr(pos + 1);
  }
  std::vector<Int> nums;
  if (!args.empty()) {
    std::istringstream is(args);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      if (tok.empty()) throw InvalidArgument("bad builtin parameters: " + spec);
      nums.emplace_back(tok);
    }
  }
  if (head == "heisenberg") return heisenberg_presentation();
  if (head == "example2") return example2_presentation();
  if (head == "free_nilpotent") {
    if (nums.size() != 2) throw InvalidArgument("free_nilpotent:<class>,<rank>");
    return free_nilpotent_presentation(static_cast<int>(nums[0].get_si()),
                                       static_cast<int>(nums[1].get_si()));
  }
  if (head == "abelian") {
    if (nums.empty()) throw InvalidArgument("abelian:<d1>,<d2>,...");
    return abelian_presentation(nums);
  }
  throw InvalidArgument("unknown builtin group " + spec);
}

}  // namespace nilkit
