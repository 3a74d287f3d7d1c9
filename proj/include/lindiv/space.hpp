#pragma once

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lindiv {

// ---------------------------------------------------------------------------
// Errors. Infrastructure failures are exceptions; verification failures are
// verdicts inside reports, never exceptions.
// ---------------------------------------------------------------------------

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidInput : std::invalid_argument {
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

struct NoEscapingRay : std::runtime_error {
  explicit NoEscapingRay(const std::string& what) : std::runtime_error(what) {}
};

struct WrongBase : std::logic_error {
  explicit WrongBase(const std::string& what) : std::logic_error(what) {}
};

struct ParseError : std::invalid_argument {
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

struct DomainGap : std::invalid_argument {
  explicit DomainGap(const std::string& what) : std::invalid_argument(what) {}
};

struct UnsupportedParams : std::invalid_argument {
  explicit UnsupportedParams(const std::string& what) : std::invalid_argument(what) {}
};

// Construction-time invariant check that survives release builds.
inline void check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("invariant violated: ") + what);
}

inline std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

// ---------------------------------------------------------------------------
// Edge labels. Compact POD so neighbor enumeration stays cheap inside BFS;
// each family documents the meaning of (kind, arg) and renders text forms.
// ---------------------------------------------------------------------------

struct Label {
  std::int16_t kind = 0;
  std::int32_t arg = 0;

  friend bool operator==(const Label&, const Label&) = default;
};

template <typename V>
struct Step {
  Label label;
  V to;
};

// ---------------------------------------------------------------------------
// MarkedSpace: a basepointed graph with finite bounded degree, symmetric
// neighbor relation and a canonical byte serialization of vertices. Optional
// extensions (exact norm oracle, pairwise metric oracle, norm lower-bound
// certificate) are detected from the type.
// ---------------------------------------------------------------------------

template <typename S>
concept MarkedSpace = requires(const S& s, const typename S::vertex_type& v) {
  typename S::vertex_type;
  { s.basepoint() } -> std::convertible_to<typename S::vertex_type>;
  { s.neighbors(v) } -> std::convertible_to<std::vector<Step<typename S::vertex_type>>>;
  { s.degree_bound() } -> std::convertible_to<int>;
  { s.canonical_key(v) } -> std::convertible_to<std::string>;
  { s.label_text(Label{}) } -> std::convertible_to<std::string>;
};

template <typename S>
concept HasNormOracle = MarkedSpace<S> && requires(const S& s, const typename S::vertex_type& v) {
  { s.exact_norm(v) } -> std::convertible_to<std::int64_t>;
};

// d(u, v) in closed form; used as an exact A* heuristic and as the
// closed-form side of oracle comparisons.
template <typename S>
concept HasPairOracle = MarkedSpace<S> &&
    requires(const S& s, const typename S::vertex_type& u, const typename S::vertex_type& v) {
      { s.pair_distance(u, v) } -> std::convertible_to<std::int64_t>;
    };

template <typename S>
concept HasCertificate = MarkedSpace<S> && requires(const S& s, const typename S::vertex_type& v) {
  { s.norm_lower_bound(v) } -> std::convertible_to<std::int64_t>;
};

// A complete invariant of the unordered pair under basepoint-fixing
// automorphisms: equal keys mean the pairs are equivalent, so divergence
// values may be computed once per key.
template <typename S>
concept HasPairOrbitKey = MarkedSpace<S> &&
    requires(const S& s, const typename S::vertex_type& u, const typename S::vertex_type& v) {
      { s.pair_orbit_key(u, v) } -> std::convertible_to<std::string>;
    };

template <MarkedSpace S>
std::int64_t certificate_or_zero(const S& space, const typename S::vertex_type& v) {
  if constexpr (HasCertificate<S>) {
    return space.norm_lower_bound(v);
  } else {
    (void)space;
    (void)v;
    return 0;
  }
}

// ---------------------------------------------------------------------------
// Path: a start vertex plus edge labels, with the visited vertices kept
// alongside so verification never has to re-derive them.
// ---------------------------------------------------------------------------

template <typename V>
struct Path {
  V start;
  std::vector<Label> labels;
  std::vector<V> vertices;  // vertices[0] == start, size == labels.size() + 1

  explicit Path(V s) : start(s) { vertices.push_back(start); }

  std::size_t length() const { return labels.size(); }

  const V& end() const { return vertices.back(); }

  void push(const Label& label, V next) {
    labels.push_back(label);
    vertices.push_back(std::move(next));
  }
};

// Applies one labeled step; throws InvalidInput if the label is not an edge
// at this vertex.
template <MarkedSpace S>
typename S::vertex_type apply_label(const S& space, const typename S::vertex_type& v,
                                    const Label& label) {
  for (const auto& step : space.neighbors(v)) {
    if (step.label == label) return step.to;
  }
  throw InvalidInput("apply_label: label " + space.label_text(label) + " is not incident here");
}

template <MarkedSpace S>
void extend_path(const S& space, Path<typename S::vertex_type>& path,
                 const std::vector<Label>& labels) {
  for (const auto& label : labels) {
    path.push(label, apply_label(space, path.end(), label));
  }
}

}  // namespace lindiv
