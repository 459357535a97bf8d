#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cayleysep/graph.hpp"

namespace cayleysep {

using Symbol = int;
using Word = std::vector<Symbol>;
using ElementKey = std::string;

inline constexpr std::size_t kDefaultVertexBudget = 500000;

/// Symmetric generating set: named symbols plus the involution pairing each
/// symbol with its inverse. Order-2 generators are their own inverse.
class GeneratorAlphabet {
 public:
  GeneratorAlphabet() = default;
  GeneratorAlphabet(std::vector<std::string> symbols, std::vector<Symbol> inverse);

  /// Symbols g, g- for each generator g (only g when `self_inverse[i]`).
  static GeneratorAlphabet from_generators(const std::vector<std::string>& generators,
                                           const std::vector<bool>& self_inverse = {});

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& name(Symbol s) const { return symbols_[s]; }
  Symbol inverse(Symbol s) const { return inverse_[s]; }
  std::optional<Symbol> find(std::string_view name) const;

  /// Whitespace-separated symbol names; throws ParseError on unknown tokens.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w) const;
  Word inverse_word(const Word& w) const;
  Word free_reduce(const Word& w) const;

 private:
  std::vector<std::string> symbols_;
  std::vector<Symbol> inverse_;
};

struct Presentation {
  GeneratorAlphabet alphabet;
  std::vector<Word> relators;

  std::size_t max_relator_length() const;

  /// Line 1: generator names. Each further non-empty line: one relator,
  /// tokens separated by spaces, a trailing `-` marks an inverse.
  static Presentation parse(std::istream& in);
  static Presentation load(const std::filesystem::path& path);
};

/// Longest piece (common prefix of two distinct cyclic conjugates of the
/// relators and their inverses) relative to the relator it occurs in.
/// The maximum of piece_length / relator_length over all pieces.
double max_piece_ratio(const Presentation& p);

/// Word-problem oracle for C'(1/6) presentations via Dehn's algorithm.
class DehnOracle {
 public:
  /// Throws UnsupportedError unless every relator is cyclically reduced and
  /// every piece is shorter than a sixth of its relator.
  explicit DehnOracle(Presentation p);

  /// Freely reduced, Dehn-reduced form; empty iff w is the identity.
  Word normalize(Word w) const;
  bool is_identity(const Word& w) const { return normalize(w).empty(); }
  const Presentation& presentation() const noexcept { return presentation_; }

 private:
  Presentation presentation_;
  // cyclic conjugates of relators and inverses, bucketed by first symbol
  std::vector<std::vector<Word>> by_first_;
};

/// A finitely generated group given by a multiplication oracle on element
/// keys. Keys are canonical unless canonical_keys() is false, in which case
/// equality must be decided with same_element().
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  const std::string& name() const noexcept { return name_; }
  const GeneratorAlphabet& alphabet() const noexcept { return alphabet_; }
  const ElementKey& identity() const noexcept { return identity_; }
  /// Maximum relator length M of the chosen presentation.
  std::optional<int> relator_bound() const noexcept { return relator_bound_; }
  /// Defining presentation when one is known.
  const std::optional<Presentation>& presentation() const noexcept { return presentation_; }
  /// True when the defining presentation has no relators, i.e. the Cayley
  /// graph is a tree.
  bool cayley_graph_is_tree() const;
  /// Whether the lower gap bound applies (finitely presented, one-ended).
  const std::string& applicability() const noexcept { return applicability_; }

  virtual ElementKey multiply(const ElementKey& key, Symbol s) const = 0;
  virtual bool canonical_keys() const { return true; }
  virtual bool same_element(const ElementKey& a, const ElementKey& b) const { return a == b; }
  /// Equal elements share a bucket; used to narrow same_element() searches.
  virtual std::string bucket(const ElementKey& key) const { return key; }

  ElementKey evaluate(const Word& w) const;

 protected:
  GroupModel(std::string name, GeneratorAlphabet alphabet, ElementKey identity)
      : name_(std::move(name)), alphabet_(std::move(alphabet)), identity_(std::move(identity)) {}

  std::optional<int> relator_bound_;
  std::optional<Presentation> presentation_;
  std::string applicability_;

 private:
  std::string name_;
  GeneratorAlphabet alphabet_;
  ElementKey identity_;
};

/// Group-spec tokens: zd:<d>, free:<k>, heis, lamplighter, bs:1:<n>,
/// surface:2, pres:<path>. Throws ConfigurationError otherwise.
std::shared_ptr<const GroupModel> catalog_group(std::string_view spec);

/// Word-problem model over a C'(1/6) presentation.
std::shared_ptr<const GroupModel> dehn_group(std::string name, Presentation p);

std::string catalog_help();

struct Ball {
  Graph graph;  // vertex labels are the element keys
  VertexId center = 0;
  int radius = 0;
  std::vector<int> dist_from_center;

  const ElementKey& key(VertexId v) const { return graph.label(v); }
  std::vector<VertexId> sphere(int t) const;
  /// Geodesic word from the center along the breadth-first tree.
  Word word_to(VertexId v) const;
  /// The vertex of g^-1 when v represents g (always inside the ball).
  std::optional<VertexId> inverse_of(const GroupModel& m, VertexId v) const;
  /// Vertex representing the same element as `key`, if inside the ball.
  std::optional<VertexId> locate(const GroupModel& m, const ElementKey& key) const;

  // lookup tables filled by cayley_ball
  std::unordered_map<ElementKey, VertexId> index;
  std::unordered_map<std::string, std::vector<VertexId>> buckets;
  // breadth-first tree: parent vertex and the symbol leading from it
  std::vector<VertexId> parent;
  std::vector<Symbol> parent_symbol;
};

/// Breadth-first closure of the identity to distance r. Each layer is sorted by
/// key before ids are assigned, so numbering is deterministic. Throws
/// ResourceError once more than `budget` vertices would be created.
Ball cayley_ball(const GroupModel& m, int r, std::size_t budget = kDefaultVertexBudget);

/// Like cayley_ball, but stops at the largest radius <= r that fits the
/// budget instead of throwing.
Ball largest_cayley_ball(const GroupModel& m, int r, std::size_t budget = kDefaultVertexBudget);

/// |B_0| ... |B_{r_max}|.
std::vector<std::size_t> growth_table(const GroupModel& m, int r_max,
                                      std::size_t budget = kDefaultVertexBudget);

/// Largest r with |B_r| <= n.
int kappa(const GroupModel& m, std::size_t n, std::size_t budget = kDefaultVertexBudget);

}  // namespace cayleysep
