#ifndef ACTW_CONTEXT_TREE_HPP
#define ACTW_CONTEXT_TREE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "actw/errors.hpp"
#include "actw/estimator.hpp"

namespace actw {

// Discount-rate schedule driving the estimators inside the tree.
enum class VariantKind : uint8_t {
    Ctw = 0,           // no discounting
    FixedRate = 1,     // constant gamma at every node
    SeqLength = 2,     // gamma = c * t^-alpha, t = bits processed so far
    PartialVisit = 3,  // gamma = c * k^-alpha, k = visits of the node itself
    FullVisit = 4,     // leaf rate c * k_n^-alpha shared by the whole path
    LeafVisit = 5,     // leaf discounted; internal counts = sum of children
};

inline constexpr uint32_t kMaxTreeDepth = 63;

struct VariantConfig {
    VariantKind kind = VariantKind::Ctw;
    double gamma = 0.0;  // FixedRate
    double c = 0.0;      // SeqLength / visit-based schedules
    double alpha = 0.0;  // SeqLength / visit-based schedules
    uint32_t depth = 28;

    // Throws ParamError unless gamma, c, alpha are in [0,1) and
    // 1 <= depth <= kMaxTreeDepth.
    void validate() const;
};

// Named parameter sets: "ctw", "actw1" (fixed rate, gamma 0.01),
// "actw2"/"actw3" (partial visit, c 0.1, alpha 0.33 / 0.5),
// "actw4" (full visit, c 0.1, alpha 0.33), "actw5" (leaf visit, same).
// Throws ParamError for unknown names.
VariantConfig preset(std::string_view name);
const std::vector<std::string_view>& preset_names();

// Discount rate applied when updating one node. leaf_visits and node_visits
// count observations including the one being applied and are clamped to
// >= 1 before exponentiation; t is the pre-update sequence length, clamped
// likewise. For LeafVisit the rate applies at the leaf only; internal nodes
// replace discounting with the additive child-sum rule and get 0 here.
double schedule_rate(const VariantConfig& cfg, uint32_t node_depth,
                     uint64_t leaf_visits, uint64_t node_visits, uint64_t t);

/* Weighted context tree of bounded depth over a binary alphabet.

   Every node holds a (discounted) KT estimator and the log of its weighted
   probability: P_w = P_kt at the leaves and 1/2 P_kt + 1/2 P_w(left) P_w(right)
   at internal nodes, kept in the natural-log domain. The root's weighted
   probability is the joint probability of the processed sequence.

   Nodes are materialised lazily along visited context paths; a node that was
   never visited has block probability 1 and does not disturb the recursion.
   The context is the last `depth` bits, zero-padded before the sequence
   starts, and descent takes the most recent bit first. */
class ContextTree {
  public:
    static constexpr uint32_t kNoNode = 0xFFFFFFFFu;

    explicit ContextTree(const VariantConfig& cfg);

    // Probability that the next bit is 1: the ratio of the root weighted
    // probability after a hypothetical 1 to its current value, computed by
    // a dry run along the context path. Does not mutate the tree.
    double predict() const;

    // Dry-run probabilities for hypothetical next bit 0 and 1; they sum to 1
    // up to rounding.
    std::array<double, 2> predict_pair() const;

    // Route an observed bit down the current context path, apply the
    // scheduled estimator update at each of the depth+1 path nodes (leaf
    // first) and recompute their weighted probabilities bottom-up.
    void update(bool one);

    // Log weighted probability at the root; 0 for a fresh tree.
    double joint_logprob() const;

    uint64_t bits_processed() const { return m_t; }
    const VariantConfig& config() const { return m_config; }
    size_t node_count() const { return m_pool.size(); }

    // Read-only view of one materialised node. Children are indexed by the
    // context-bit value of the edge (1 is the "left" edge).
    struct NodeView {
        uint32_t index = kNoNode;
        uint32_t depth = 0;
        CountPair counts;
        double log_w = 0.0;
        uint64_t visits = 0;
        std::array<uint32_t, 2> child = {kNoNode, kNoNode};
    };

    NodeView node(uint32_t index) const;
    // Pre-order walk over every materialised node.
    void for_each_node(const std::function<void(const NodeView&)>& fn) const;

    // Allocate the full tree up front (diagnostic; small depths only).
    void materialize_all();

  private:
    struct Node {
        CountPair counts;
        double log_w = 0.0;
        uint64_t visits = 0;
        std::array<uint32_t, 2> child = {kNoNode, kNoNode};
    };

    // Dry-run results for one hypothetical next bit, per path level.
    struct Pass {
        uint64_t t = ~0ull;
        std::vector<double> log_kt;
        std::vector<double> log_w;
    };

    const Node& view(uint32_t index) const;
    void refresh_context() const;
    void descend_view() const;
    void descend_materialize();
    const Pass& ensure_pass(bool one) const;
    uint32_t alloc_node();

    VariantConfig m_config;
    uint32_t m_depth;
    std::vector<Node> m_pool;  // index 0 is the root
    uint64_t m_history = 0;    // bit 0 = most recent observed bit
    uint64_t m_t = 0;

    // Per-bit caches, keyed by m_t. The context path is shared between the
    // dry runs and the committing update; pass values computed against
    // missing (all-zero) nodes are identical to those computed after
    // materialisation, so update() can reuse them directly.
    mutable std::vector<uint8_t> m_ctx;    // context bit per level 0..D-1
    mutable std::vector<uint32_t> m_path;  // node index per level 0..D
    mutable uint64_t m_path_t = ~0ull;
    mutable bool m_path_materialized = false;
    mutable std::array<Pass, 2> m_pass;
};

}  // namespace actw

#endif  // ACTW_CONTEXT_TREE_HPP
