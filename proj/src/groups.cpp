#include "cayleysep/groups.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "cayleysep/errors.hpp"

namespace cayleysep {

// ---------------------------------------------------------------------------
// Alphabet and words

GeneratorAlphabet::GeneratorAlphabet(std::vector<std::string> symbols, std::vector<Symbol> inverse)
    : symbols_(std::move(symbols)), inverse_(std::move(inverse)) {
  if (symbols_.size() != inverse_.size()) {
    throw ArgumentError("alphabet: inverse map size differs from symbol count");
  }
  std::unordered_set<std::string> seen;
  for (std::size_t s = 0; s < symbols_.size(); ++s) {
    if (symbols_[s].empty()) throw ArgumentError("alphabet: empty symbol name");
    if (!seen.insert(symbols_[s]).second) {
      throw ArgumentError("alphabet: duplicate symbol '" + symbols_[s] + "'");
    }
    const Symbol t = inverse_[s];
    if (t < 0 || static_cast<std::size_t>(t) >= symbols_.size() ||
        inverse_[t] != static_cast<Symbol>(s)) {
      throw ArgumentError("alphabet: inverse map is not an involution at '" + symbols_[s] + "'");
    }
  }
}

GeneratorAlphabet GeneratorAlphabet::from_generators(const std::vector<std::string>& generators,
                                                     const std::vector<bool>& self_inverse) {
  std::vector<std::string> names;
  std::vector<Symbol> inverse;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto s = static_cast<Symbol>(names.size());
    names.push_back(generators[i]);
    if (i < self_inverse.size() && self_inverse[i]) {
      inverse.push_back(s);
    } else {
      names.push_back(generators[i] + "-");
      inverse.push_back(s + 1);
      inverse.push_back(s);
    }
  }
  return GeneratorAlphabet(std::move(names), std::move(inverse));
}

std::optional<Symbol> GeneratorAlphabet::find(std::string_view name) const {
  for (std::size_t s = 0; s < symbols_.size(); ++s) {
    if (symbols_[s] == name) return static_cast<Symbol>(s);
  }
  return std::nullopt;
}

Word GeneratorAlphabet::parse_word(std::string_view text) const {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) {
      auto s = find(text.substr(i, j - i));
      if (!s) throw ParseError("unknown generator symbol '" + std::string(text.substr(i, j - i)) + "'");
      w.push_back(*s);
    }
    i = j;
  }
  return w;
}

std::string GeneratorAlphabet::format_word(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += symbols_[w[i]];
  }
  return out;
}

Word GeneratorAlphabet::inverse_word(const Word& w) const {
  Word out(w.rbegin(), w.rend());
  for (auto& s : out) s = inverse_[s];
  return out;
}

Word GeneratorAlphabet::free_reduce(const Word& w) const {
  Word out;
  out.reserve(w.size());
  for (Symbol s : w) {
    if (!out.empty() && out.back() == inverse_[s]) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Presentations and Dehn's algorithm

std::size_t Presentation::max_relator_length() const {
  std::size_t m = 0;
  for (const auto& r : relators) m = std::max(m, r.size());
  return m;
}

Presentation Presentation::parse(std::istream& in) {
  std::string line;
  long line_no = 0;
  Presentation p;
  bool have_generators = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::vector<std::string> fields;
    for (std::string t; tokens >> t;) fields.push_back(t);
    if (fields.empty()) continue;
    if (!have_generators) {
      for (const auto& f : fields) {
        if (f.back() == '-') throw ParseError("generator name may not end in '-'", line_no);
      }
      try {
        p.alphabet = GeneratorAlphabet::from_generators(fields);
      } catch (const ArgumentError& e) {
        throw ParseError(e.what(), line_no);
      }
      have_generators = true;
      continue;
    }
    Word r;
    for (const auto& f : fields) {
      auto s = p.alphabet.find(f);
      if (!s) throw ParseError("unknown generator symbol '" + f + "'", line_no);
      r.push_back(*s);
    }
    p.relators.push_back(std::move(r));
  }
  if (!have_generators) throw ParseError("presentation has no generator line");
  return p;
}

Presentation Presentation::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open presentation '" + path.string() + "'");
  return parse(in);
}

namespace {

std::vector<Word> cyclic_words(const Presentation& p) {
  std::vector<Word> out;
  for (const auto& r : p.relators) {
    for (const Word& base : {r, p.alphabet.inverse_word(r)}) {
      for (std::size_t shift = 0; shift < base.size(); ++shift) {
        Word c(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) c[i] = base[(i + shift) % base.size()];
        out.push_back(std::move(c));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void require_cyclically_reduced(const Presentation& p) {
  for (const auto& r : p.relators) {
    if (r.empty()) throw UnsupportedError("presentation contains an empty relator");
    if (p.alphabet.free_reduce(r) != r || p.alphabet.inverse(r.front()) == r.back()) {
      throw UnsupportedError("relator '" + p.alphabet.format_word(r) +
                             "' is not cyclically reduced");
    }
  }
}

}  // namespace

double max_piece_ratio(const Presentation& p) {
  const auto words = cyclic_words(p);
  double worst = 0.0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      const auto& a = words[i];
      const auto& b = words[j];
      std::size_t common = 0;
      while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
      if (common == 0) continue;
      const double ratio =
          static_cast<double>(common) / static_cast<double>(std::min(a.size(), b.size()));
      worst = std::max(worst, ratio);
    }
  }
  return worst;
}

DehnOracle::DehnOracle(Presentation p) : presentation_(std::move(p)) {
  require_cyclically_reduced(presentation_);
  if (max_piece_ratio(presentation_) >= 1.0 / 6.0) {
    throw UnsupportedError("presentation fails the C'(1/6) small-cancellation piece check");
  }
  by_first_.resize(presentation_.alphabet.size());
  for (auto& c : cyclic_words(presentation_)) by_first_[c.front()].push_back(std::move(c));
}

Word DehnOracle::normalize(Word w) const {
  const auto& alphabet = presentation_.alphabet;
  w = alphabet.free_reduce(w);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      for (const Word& c : by_first_[w[i]]) {
        std::size_t m = 0;
        while (m < c.size() && i + m < w.size() && w[i + m] == c[m]) ++m;
        if (2 * m <= c.size()) continue;
        // w[i, i+m) equals the inverse of the rest of c; swap in the shorter side
        Word rest(c.begin() + static_cast<long>(m), c.end());
        Word replacement = alphabet.inverse_word(rest);
        Word next(w.begin(), w.begin() + static_cast<long>(i));
        next.insert(next.end(), replacement.begin(), replacement.end());
        next.insert(next.end(), w.begin() + static_cast<long>(i + m), w.end());
        w = alphabet.free_reduce(next);
        changed = true;
        break;
      }
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Models

bool GroupModel::cayley_graph_is_tree() const {
  return presentation_.has_value() && presentation_->relators.empty();
}

ElementKey GroupModel::evaluate(const Word& w) const {
  ElementKey k = identity_;
  for (Symbol s : w) k = multiply(k, s);
  return k;
}

namespace {

std::vector<std::string> generator_names(std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

std::vector<std::int64_t> parse_ints(std::string_view text, char sep) {
  std::vector<std::int64_t> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(sep, start);
    const auto piece = text.substr(start, end == std::string_view::npos ? text.size() - start
                                                                         : end - start);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc() || ptr != piece.data() + piece.size()) {
      throw ArgumentError("malformed element key '" + std::string(text) + "'");
    }
    out.push_back(value);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string join_ints(const std::vector<std::int64_t>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

Presentation commutator_presentation(std::size_t d, const GeneratorAlphabet& alphabet) {
  Presentation p{alphabet, {}};
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const Symbol a = static_cast<Symbol>(2 * i), b = static_cast<Symbol>(2 * j);
      p.relators.push_back({a, b, a + 1, b + 1});
    }
  }
  return p;
}

class LatticeModel final : public GroupModel {
 public:
  explicit LatticeModel(std::size_t d)
      : GroupModel("zd:" + std::to_string(d), GeneratorAlphabet::from_generators(generator_names(d)),
                   join_ints(std::vector<std::int64_t>(d, 0), ',')) {
    presentation_ = commutator_presentation(d, alphabet());
    if (d >= 2) {
      relator_bound_ = 4;
      applicability_ = "finitely presented and one-ended: the gap bound applies";
    } else {
      applicability_ = "virtually free: the gap bound does not apply";
    }
  }

  ElementKey multiply(const ElementKey& key, Symbol s) const override {
    auto v = parse_ints(key, ',');
    v[static_cast<std::size_t>(s / 2)] += (s % 2 == 0) ? 1 : -1;
    return join_ints(v, ',');
  }
};

class FreeModel final : public GroupModel {
 public:
  explicit FreeModel(std::size_t k)
      : GroupModel("free:" + std::to_string(k),
                   GeneratorAlphabet::from_generators(generator_names(k)), "") {
    presentation_ = Presentation{alphabet(), {}};
    applicability_ = "virtually free: the gap bound does not apply";
  }

  ElementKey multiply(const ElementKey& key, Symbol s) const override {
    Word w = alphabet().parse_word(key);
    if (!w.empty() && w.back() == alphabet().inverse(s)) {
      w.pop_back();
    } else {
      w.push_back(s);
    }
    return alphabet().format_word(w);
  }
};

// Upper unitriangular integer matrices [[1,x,z],[0,1,y],[0,0,1]] keyed "x,y,z";
// a, b, c are the three elementary matrices.
class HeisenbergModel final : public GroupModel {
 public:
  HeisenbergModel()
      : GroupModel("heis", GeneratorAlphabet::from_generators({"a", "b", "c"}), "0,0,0") {
    const Symbol a = 0, b = 2, c = 4;
    const Symbol A = 1, B = 3, C = 5;
    presentation_ = Presentation{alphabet(), {{a, b, A, B, C}, {a, c, A, C}, {b, c, B, C}}};
    relator_bound_ = 5;
    applicability_ = "finitely presented and one-ended: the gap bound applies";
  }

  ElementKey multiply(const ElementKey& key, Symbol s) const override {
    auto v = parse_ints(key, ',');
    switch (s) {
      case 0: v[0] += 1; break;
      case 1: v[0] -= 1; break;
      case 2: v[1] += 1; v[2] += v[0]; break;
      case 3: v[1] -= 1; v[2] -= v[0]; break;
      case 4: v[2] += 1; break;
      case 5: v[2] -= 1; break;
      default: throw ArgumentError("heis: bad symbol");
    }
    return join_ints(v, ',');
  }
};

// Z/2 wr Z keyed "cursor|lit positions"; t moves the cursor, a toggles its lamp.
class LamplighterModel final : public GroupModel {
 public:
  LamplighterModel()
      : GroupModel("lamplighter", GeneratorAlphabet::from_generators({"t", "a"}, {false, true}),
                   "0|") {
    applicability_ = "not finitely presented: the gap bound does not apply";
  }

  ElementKey multiply(const ElementKey& key, Symbol s) const override {
    const auto bar = key.find('|');
    if (bar == std::string::npos) throw ArgumentError("malformed lamplighter key '" + key + "'");
    std::int64_t cursor = parse_ints(std::string_view(key).substr(0, bar), ',').at(0);
    auto lamps = parse_ints(std::string_view(key).substr(bar + 1), ',');
    switch (s) {
      case 0: ++cursor; break;
      case 1: --cursor; break;
      case 2: {
        auto it = std::lower_bound(lamps.begin(), lamps.end(), cursor);
        if (it != lamps.end() && *it == cursor) {
          lamps.erase(it);
        } else {
          lamps.insert(it, cursor);
        }
        break;
      }
      default: throw ArgumentError("lamplighter: bad symbol");
    }
    return std::to_string(cursor) + "|" + join_ints(lamps, ',');
  }
};

// BS(1,n) as affine maps x -> n^k x + p / n^e, keyed "k|p|e" with e minimal.
class BaumslagSolitarModel final : public GroupModel {
 public:
  explicit BaumslagSolitarModel(std::int64_t n)
      : GroupModel("bs:1:" + std::to_string(n),
                   GeneratorAlphabet::from_generators({"a", "t"}), "0|0|0"),
        n_(n) {
    const Symbol a = 0, A = 1, t = 2, T = 3;
    Word r{t, a, T};
    for (std::int64_t i = 0; i < n; ++i) r.push_back(A);
    presentation_ = Presentation{alphabet(), {r}};
    relator_bound_ = static_cast<int>(n + 3);
    applicability_ = "finitely presented and one-ended: the gap bound applies";
  }

  ElementKey multiply(const ElementKey& key, Symbol s) const override {
    auto v = parse_ints(key, '|');
    std::int64_t k = v.at(0), p = v.at(1), e = v.at(2);
    switch (s) {
      case 2: ++k; break;
      case 3: --k; break;
      case 0:
      case 1: {
        const std::int64_t sign = s == 0 ? 1 : -1;
        // p / n^e + sign * n^k over the common denominator n^E
        const std::int64_t E = std::max(e, -k);
        p = checked_mul(p, power(E - e));
        p = checked_add(p, sign * power(E + k));
        e = E;
        while (e > 0 && p % n_ == 0) {
          p /= n_;
          --e;
        }
        break;
      }
      default: throw ArgumentError("bs: bad symbol");
    }
    return std::to_string(k) + "|" + std::to_string(p) + "|" + std::to_string(e);
  }

 private:
  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw ResourceError("bs: element exceeds 64-bit range");
    return out;
  }
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw ResourceError("bs: element exceeds 64-bit range");
    return out;
  }
  std::int64_t power(std::int64_t exponent) const {
    std::int64_t out = 1;
    for (std::int64_t i = 0; i < exponent; ++i) out = checked_mul(out, n_);
    return out;
  }

  std::int64_t n_;
};

// Keys are Dehn-reduced words. Different reduced words may still name the
// same element, so keys are not canonical.
// Integer basis of {phi : phi . row = 0 for every row}, by exact row reduction.
std::vector<std::vector<std::int64_t>> integer_nullspace(std::vector<std::vector<std::int64_t>> rows,
                                                         std::size_t cols) {
  auto normalize = [](std::vector<std::int64_t>& r) {
    std::int64_t g = 0;
    for (auto x : r) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1) {
      for (auto& x : r) x /= g;
    }
  };
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::int64_t a = rows[rank][c], b = rows[r][c];
      for (std::size_t j = 0; j < cols; ++j) rows[r][j] = rows[r][j] * a - rows[rank][j] * b;
      normalize(rows[r]);
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::int64_t scale = 1;
  for (std::size_t r = 0; r < rank; ++r) {
    const std::int64_t a = rows[r][pivot_col[r]];
    scale = std::lcm(scale, a < 0 ? -a : a);
  }
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivot_col.begin(), pivot_col.end(), f) != pivot_col.end()) continue;
    std::vector<std::int64_t> v(cols, 0);
    v[f] = scale;
    for (std::size_t r = 0; r < rank; ++r) {
      v[pivot_col[r]] = -scale / rows[r][pivot_col[r]] * rows[r][f];
    }
    normalize(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

class DehnModel final : public GroupModel {
 public:
  DehnModel(std::string name, Presentation p)
      : GroupModel(std::move(name), p.alphabet, ""), oracle_(p) {
    relator_bound_ = static_cast<int>(p.max_relator_length());
    // Exponent sums are invariants when every relator has zero exponent sum
    // in every generator.
    const auto& al = alphabet();
    generator_of_.assign(al.size(), 0);
    sign_of_.assign(al.size(), 0);
    int next = 0;
    for (Symbol s = 0; s < static_cast<Symbol>(al.size()); ++s) {
      const Symbol t = al.inverse(s);
      if (t == s) {
        exponent_invariant_ = false;
      } else if (s < t) {
        generator_of_[s] = generator_of_[t] = next++;
        sign_of_[s] = 1;
        sign_of_[t] = -1;
      }
    }
    generator_count_ = next;
    std::vector<std::vector<std::int64_t>> relator_images;
    for (const auto& r : p.relators) {
      auto [sums, z] = nilpotent_image(r);
      if (std::any_of(sums.begin(), sums.end(), [](std::int64_t x) { return x != 0; })) {
        exponent_invariant_ = false;
      }
      relator_images.push_back(std::move(z));
    }
    if (exponent_invariant_) functionals_ = integer_nullspace(relator_images, pair_count());
    presentation_ = std::move(p);
    applicability_ = presentation_->relators.empty()
                         ? "virtually free: the gap bound does not apply"
                         : "finitely presented; one-endedness is not machine-checked";
  }

  ElementKey multiply(const ElementKey& key, Symbol s) const override {
    Word w = alphabet().parse_word(key);
    w.push_back(s);
    return alphabet().format_word(oracle_.normalize(std::move(w)));
  }

  bool canonical_keys() const override { return false; }

  bool same_element(const ElementKey& a, const ElementKey& b) const override {
    if (a == b) return true;
    Word w = alphabet().parse_word(a);
    const Word inv = alphabet().inverse_word(alphabet().parse_word(b));
    w.insert(w.end(), inv.begin(), inv.end());
    return oracle_.is_identity(w);
  }

  // Image in the class-2 nilpotent quotient: exponent sums x plus, for i < j,
  // z_ij = sum over letters g_j^e of e * x_i (x taken before the letter).
  // Relators with zero exponent sums map to central elements (0, z_r), so any
  // functional vanishing on every z_r is an invariant of the group element.
  std::string bucket(const ElementKey& key) const override {
    if (!exponent_invariant_) return {};
    auto [sums, z] = nilpotent_image(alphabet().parse_word(key));
    for (const auto& phi : functionals_) {
      std::int64_t dot = 0;
      for (std::size_t i = 0; i < phi.size(); ++i) dot += phi[i] * z[i];
      sums.push_back(dot);
    }
    return join_ints(sums, ',');
  }

  const DehnOracle& oracle() const { return oracle_; }

 private:
  DehnOracle oracle_;
  std::vector<int> generator_of_;
  std::vector<int> sign_of_;
  int generator_count_ = 0;
  bool exponent_invariant_ = true;
  std::vector<std::vector<std::int64_t>> functionals_;

  std::size_t pair_count() const {
    const auto k = static_cast<std::size_t>(generator_count_);
    return k * (k - 1) / 2;
  }

  std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> nilpotent_image(
      const Word& w) const {
    const int k = generator_count_;
    std::vector<std::int64_t> x(k, 0), z(pair_count(), 0);
    for (Symbol s : w) {
      const int j = generator_of_[s];
      const int e = sign_of_[s];
      for (int i = 0; i < j; ++i) z[pair_index(i, j)] += e * x[i];
      x[j] += e;
    }
    return {std::move(x), std::move(z)};
  }

  std::size_t pair_index(int i, int j) const {
    // position of (i, j), i < j, in row-major order of the strict upper triangle
    const int k = generator_count_;
    return static_cast<std::size_t>(i * (2 * k - i - 1) / 2 + (j - i - 1));
  }
};

std::optional<long> parse_positive(std::string_view text) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value <= 0) return std::nullopt;
  return value;
}

}  // namespace

std::shared_ptr<const GroupModel> dehn_group(std::string name, Presentation p) {
  return std::make_shared<DehnModel>(std::move(name), std::move(p));
}

std::string catalog_help() {
  return "zd:<d>, free:<k>, heis, lamplighter, bs:1:<n>, surface:2, pres:<path>";
}

std::shared_ptr<const GroupModel> catalog_group(std::string_view spec) {
  auto bad = [&]() -> ConfigurationError {
    return ConfigurationError("unknown group spec '" + std::string(spec) +
                              "'; valid specs: " + catalog_help());
  };
  if (spec.starts_with("zd:")) {
    auto d = parse_positive(spec.substr(3));
    if (!d || *d > 26) throw bad();
    return std::make_shared<LatticeModel>(static_cast<std::size_t>(*d));
  }
  if (spec.starts_with("free:")) {
    auto k = parse_positive(spec.substr(5));
    if (!k || *k > 26) throw bad();
    return std::make_shared<FreeModel>(static_cast<std::size_t>(*k));
  }
  if (spec == "heis") return std::make_shared<HeisenbergModel>();
  if (spec == "lamplighter") return std::make_shared<LamplighterModel>();
  if (spec.starts_with("bs:1:")) {
    auto n = parse_positive(spec.substr(5));
    if (!n || *n < 2) throw bad();
    return std::make_shared<BaumslagSolitarModel>(*n);
  }
  if (spec == "surface:2") {
    auto alphabet = GeneratorAlphabet::from_generators({"a", "b", "c", "d"});
    Presentation p{alphabet, {alphabet.parse_word("a b a- b- c d c- d-")}};
    auto model = std::make_shared<DehnModel>("surface:2", std::move(p));
    return model;
  }
  if (spec.starts_with("pres:")) {
    return dehn_group(std::string(spec), Presentation::load(std::string(spec.substr(5))));
  }
  if (spec.starts_with("file:") || spec.starts_with("sierpinski:")) {
    throw ConfigurationError("'" + std::string(spec) +
                             "' names a graph, not a group; use it as a graph source");
  }
  throw bad();
}

// ---------------------------------------------------------------------------
// Balls

std::vector<VertexId> Ball::sphere(int t) const {
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < dist_from_center.size(); ++v) {
    if (dist_from_center[v] == t) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

Word Ball::word_to(VertexId v) const {
  Word w;
  for (; parent[v] >= 0; v = parent[v]) w.push_back(parent_symbol[v]);
  std::reverse(w.begin(), w.end());
  return w;
}

std::optional<VertexId> Ball::inverse_of(const GroupModel& m, VertexId v) const {
  return locate(m, m.evaluate(m.alphabet().inverse_word(word_to(v))));
}

std::optional<VertexId> Ball::locate(const GroupModel& m, const ElementKey& key) const {
  if (auto it = index.find(key); it != index.end()) return it->second;
  if (m.canonical_keys()) return std::nullopt;
  auto it = buckets.find(m.bucket(key));
  if (it == buckets.end()) return std::nullopt;
  for (VertexId v : it->second) {
    if (m.same_element(key, graph.label(v))) return v;
  }
  return std::nullopt;
}

namespace {

// Layer-by-layer breadth-first builder shared by balls, growth and kappa.
class BallBuilder {
 public:
  BallBuilder(const GroupModel& m, std::size_t budget, bool with_edges)
      : model_(m), budget_(budget), with_edges_(with_edges) {
    keys_.push_back(m.identity());
    dist_.push_back(0);
    parent_.emplace_back(-1, -1);
    remember(0);
    layer_begin_ = 0;
  }

  std::size_t size() const { return keys_.size(); }
  int radius() const { return radius_; }

  // Adds layer radius+1. Returns its size (0 for a finite group exhausted).
  std::size_t grow() {
    const std::size_t finalized = keys_.size();
    std::vector<ElementKey> pending;
    std::unordered_map<ElementKey, std::size_t> pending_index;
    std::unordered_map<std::string, std::vector<std::size_t>> pending_buckets;
    std::vector<std::pair<VertexId, std::size_t>> pending_edges;
    std::vector<std::pair<VertexId, Symbol>> pending_parent;

    for (std::size_t u = layer_begin_; u < finalized; ++u) {
      for (Symbol s = 0; s < static_cast<Symbol>(model_.alphabet().size()); ++s) {
        ElementKey w = model_.multiply(keys_[u], s);
        if (auto hit = find_existing(w, radius_ - 1)) {
          add_edge(static_cast<VertexId>(u), *hit);
          continue;
        }
        if (auto it = pending_index.find(w); it != pending_index.end()) {
          pending_edges.emplace_back(static_cast<VertexId>(u), it->second);
          continue;
        }
        std::optional<std::size_t> match;
        if (!model_.canonical_keys()) {
          auto bit = pending_buckets.find(model_.bucket(w));
          if (bit != pending_buckets.end()) {
            for (std::size_t idx : bit->second) {
              if (model_.same_element(w, pending[idx])) {
                match = idx;
                break;
              }
            }
          }
        }
        if (!match) {
          if (finalized + pending.size() + 1 > budget_) {
            throw ResourceError("vertex budget of " + std::to_string(budget_) +
                                " exceeded while building radius " +
                                std::to_string(radius_ + 1) + " (radius " +
                                std::to_string(radius_) + " complete)");
          }
          match = pending.size();
          pending_index.emplace(w, pending.size());
          if (!model_.canonical_keys()) pending_buckets[model_.bucket(w)].push_back(pending.size());
          pending.push_back(std::move(w));
          pending_parent.emplace_back(static_cast<VertexId>(u), s);
        }
        pending_edges.emplace_back(static_cast<VertexId>(u), *match);
      }
    }

    if (pending.empty()) return 0;
    std::vector<std::size_t> order(pending.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pending[a] < pending[b]; });
    std::vector<VertexId> final_id(pending.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      final_id[order[rank]] = static_cast<VertexId>(finalized + rank);
    }
    for (std::size_t idx : order) {
      keys_.push_back(std::move(pending[idx]));
      dist_.push_back(radius_ + 1);
      parent_.push_back(pending_parent[idx]);
      remember(keys_.size() - 1);
    }
    for (auto [u, idx] : pending_edges) add_edge(u, final_id[idx]);
    layer_begin_ = finalized;
    ++radius_;
    return pending.size();
  }

  Ball finish() {
    // Edges inside the outer layer have not been seen yet.
    for (std::size_t u = layer_begin_; u < keys_.size(); ++u) {
      for (Symbol s = 0; s < static_cast<Symbol>(model_.alphabet().size()); ++s) {
        if (auto hit = find_existing(model_.multiply(keys_[u], s), radius_ - 1)) {
          add_edge(static_cast<VertexId>(u), *hit);
        }
      }
    }
    Ball ball;
    ball.radius = radius_;
    ball.center = 0;
    ball.dist_from_center = dist_;
    for (auto [p, s] : parent_) {
      ball.parent.push_back(p);
      ball.parent_symbol.push_back(s);
    }
    ball.graph = Graph::from_edges(keys_.size(), edges_, keys_);
    ball.index = std::move(index_);
    if (!model_.canonical_keys()) {
      for (auto& [bucket, ids] : buckets_) {
        ball.buckets[bucket].assign(ids.begin(), ids.end());
      }
    }
    return ball;
  }

 private:
  void remember(std::size_t v) {
    index_.emplace(keys_[v], static_cast<VertexId>(v));
    if (!model_.canonical_keys()) buckets_[model_.bucket(keys_[v])].push_back(static_cast<VertexId>(v));
  }

  std::optional<VertexId> find_existing(const ElementKey& w, int min_layer) const {
    if (auto it = index_.find(w); it != index_.end()) return it->second;
    if (model_.canonical_keys()) return std::nullopt;
    auto it = buckets_.find(model_.bucket(w));
    if (it == buckets_.end()) return std::nullopt;
    for (VertexId v : it->second) {
      if (dist_[v] < min_layer) continue;
      if (model_.same_element(w, keys_[v])) return v;
    }
    return std::nullopt;
  }

  void add_edge(VertexId u, VertexId v) {
    if (with_edges_ && u != v) edges_.emplace_back(std::min(u, v), std::max(u, v));
  }

  const GroupModel& model_;
  std::size_t budget_;
  bool with_edges_;
  int radius_ = 0;
  std::size_t layer_begin_ = 0;
  std::vector<ElementKey> keys_;
  std::vector<int> dist_;
  std::vector<std::pair<VertexId, Symbol>> parent_;
  std::unordered_map<ElementKey, VertexId> index_;
  std::unordered_map<std::string, std::vector<VertexId>> buckets_;
  std::vector<Edge> edges_;
};

}  // namespace

Ball cayley_ball(const GroupModel& m, int r, std::size_t budget) {
  if (r < 0) throw ArgumentError("ball radius must be non-negative");
  BallBuilder builder(m, budget, true);
  while (builder.radius() < r) {
    if (builder.grow() == 0) break;
  }
  return builder.finish();
}

Ball largest_cayley_ball(const GroupModel& m, int r, std::size_t budget) {
  if (r < 0) throw ArgumentError("ball radius must be non-negative");
  BallBuilder builder(m, budget, true);
  while (builder.radius() < r) {
    try {
      if (builder.grow() == 0) break;
    } catch (const ResourceError&) {
      break;  // the partial layer is discarded; edges it recorded are duplicates
    }
  }
  return builder.finish();
}

std::vector<std::size_t> growth_table(const GroupModel& m, int r_max, std::size_t budget) {
  if (r_max < 0) throw ArgumentError("growth table radius must be non-negative");
  BallBuilder builder(m, budget, false);
  std::vector<std::size_t> out{builder.size()};
  while (static_cast<int>(out.size()) <= r_max) {
    builder.grow();
    out.push_back(builder.size());
  }
  return out;
}

int kappa(const GroupModel& m, std::size_t n, std::size_t budget) {
  if (n < 1) throw ArgumentError("kappa needs n >= 1");
  BallBuilder builder(m, budget, false);
  for (;;) {
    const std::size_t before = builder.size();
    std::size_t added = 0;
    try {
      added = builder.grow();
    } catch (const ResourceError&) {
      // the next ball is bigger than the budget, hence bigger than n
      if (n < budget) return builder.radius();
      throw;
    }
    if (added == 0) {
      throw ArgumentError("group '" + m.name() + "' is finite; kappa is unbounded for n >= " +
                          std::to_string(before));
    }
    if (builder.size() > n) return builder.radius() - 1;
  }
}

}  // namespace cayleysep
