#include "actw/context_tree.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace actw {

namespace {

const double kLogHalf = std::log(0.5);

// log(e^x + e^y) without leaving the log domain.
inline double log_add_exp(double x, double y) {
    if (x < y) std::swap(x, y);
    return x + std::log1p(std::exp(y - x));
}

inline double power_rate(double c, double alpha, uint64_t counter) {
    const double base = double(std::max<uint64_t>(counter, 1));
    return c * std::pow(base, -alpha);
}

}  // namespace

void VariantConfig::validate() const {
    if (static_cast<uint8_t>(kind) > static_cast<uint8_t>(VariantKind::LeafVisit))
        throw ParamError("unknown variant kind");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw ParamError("gamma must lie in [0,1)");
    if (!(c >= 0.0 && c < 1.0)) throw ParamError("c must lie in [0,1)");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw ParamError("alpha must lie in [0,1)");
    if (depth < 1 || depth > kMaxTreeDepth)
        throw ParamError("depth must lie in [1,63]");
}

VariantConfig preset(std::string_view name) {
    VariantConfig cfg;
    if (name == "ctw") {
        cfg.kind = VariantKind::Ctw;
    } else if (name == "actw1") {
        cfg.kind = VariantKind::FixedRate;
        cfg.gamma = 0.01;
    } else if (name == "actw2") {
        cfg.kind = VariantKind::PartialVisit;
        cfg.c = 0.1;
        cfg.alpha = 0.33;
    } else if (name == "actw3") {
        cfg.kind = VariantKind::PartialVisit;
        cfg.c = 0.1;
        cfg.alpha = 0.5;
    } else if (name == "actw4") {
        cfg.kind = VariantKind::FullVisit;
        cfg.c = 0.1;
        cfg.alpha = 0.33;
    } else if (name == "actw5") {
        cfg.kind = VariantKind::LeafVisit;
        cfg.c = 0.1;
        cfg.alpha = 0.33;
    } else {
        throw ParamError("unknown preset: " + std::string(name));
    }
    return cfg;
}

const std::vector<std::string_view>& preset_names() {
    static const std::vector<std::string_view> names = {
        "ctw", "actw1", "actw2", "actw3", "actw4", "actw5"};
    return names;
}

double schedule_rate(const VariantConfig& cfg, uint32_t node_depth,
                     uint64_t leaf_visits, uint64_t node_visits, uint64_t t) {
    switch (cfg.kind) {
        case VariantKind::Ctw:
            return 0.0;
        case VariantKind::FixedRate:
            return cfg.gamma;
        case VariantKind::SeqLength:
            return power_rate(cfg.c, cfg.alpha, t);
        case VariantKind::PartialVisit:
            return power_rate(cfg.c, cfg.alpha, node_visits);
        case VariantKind::FullVisit:
            return power_rate(cfg.c, cfg.alpha, leaf_visits);
        case VariantKind::LeafVisit:
            return node_depth == cfg.depth ? power_rate(cfg.c, cfg.alpha, leaf_visits)
                                           : 0.0;
    }
    throw ParamError("unknown variant kind");
}

ContextTree::ContextTree(const VariantConfig& cfg) : m_config(cfg), m_depth(cfg.depth) {
    cfg.validate();
    m_pool.emplace_back();  // root
    m_ctx.resize(m_depth);
    m_path.resize(m_depth + 1);
    for (Pass& p : m_pass) {
        p.log_kt.resize(m_depth + 1);
        p.log_w.resize(m_depth + 1);
    }
}

const ContextTree::Node& ContextTree::view(uint32_t index) const {
    static const Node empty;
    return index == kNoNode ? empty : m_pool[index];
}

void ContextTree::refresh_context() const {
    for (uint32_t lvl = 0; lvl < m_depth; ++lvl)
        m_ctx[lvl] = uint8_t((m_history >> lvl) & 1);
}

void ContextTree::descend_view() const {
    if (m_path_t == m_t) return;
    refresh_context();
    m_path[0] = 0;
    for (uint32_t lvl = 0; lvl < m_depth; ++lvl) {
        const uint32_t cur = m_path[lvl];
        m_path[lvl + 1] = cur == kNoNode ? kNoNode : m_pool[cur].child[m_ctx[lvl]];
    }
    m_path_t = m_t;
    m_path_materialized = false;
    m_pass[0].t = ~0ull;
    m_pass[1].t = ~0ull;
}

uint32_t ContextTree::alloc_node() {
    m_pool.emplace_back();
    return uint32_t(m_pool.size() - 1);
}

void ContextTree::descend_materialize() {
    descend_view();
    if (m_path_materialized) return;
    for (uint32_t lvl = 0; lvl < m_depth; ++lvl) {
        if (m_path[lvl + 1] == kNoNode) {
            const uint32_t fresh = alloc_node();
            m_pool[m_path[lvl]].child[m_ctx[lvl]] = fresh;
            m_path[lvl + 1] = fresh;
        }
    }
    m_path_materialized = true;
}

const ContextTree::Pass& ContextTree::ensure_pass(bool one) const {
    Pass& pass = m_pass[one];
    if (pass.t == m_t) return pass;

    const uint32_t depth = m_depth;
    const Node& leaf = view(m_path[depth]);
    double lk = leaf.counts.log_kt + std::log(kt_predict(leaf.counts, one));
    pass.log_kt[depth] = lk;
    pass.log_w[depth] = lk;

    for (uint32_t lvl = depth; lvl-- > 0;) {
        const Node& n = view(m_path[lvl]);
        const double nk = n.counts.log_kt + std::log(kt_predict(n.counts, one));
        double off = 0.0;
        if (m_path[lvl] != kNoNode) {
            const uint32_t sibling = m_pool[m_path[lvl]].child[m_ctx[lvl] ^ 1];
            if (sibling != kNoNode) off = m_pool[sibling].log_w;
        }
        pass.log_kt[lvl] = nk;
        pass.log_w[lvl] = kLogHalf + log_add_exp(nk, pass.log_w[lvl + 1] + off);
    }
    pass.t = m_t;
    return pass;
}

double ContextTree::predict() const {
    descend_view();
    const Pass& pass = ensure_pass(true);
    return std::exp(pass.log_w[0] - m_pool[0].log_w);
}

std::array<double, 2> ContextTree::predict_pair() const {
    descend_view();
    const double root = m_pool[0].log_w;
    const double p0 = std::exp(ensure_pass(false).log_w[0] - root);
    const double p1 = std::exp(ensure_pass(true).log_w[0] - root);
    return {p0, p1};
}

void ContextTree::update(bool one) {
    descend_materialize();
    const Pass& pass = ensure_pass(one);
    const uint32_t depth = m_depth;

    Node& leaf = m_pool[m_path[depth]];
    leaf.visits++;
    const uint64_t leaf_visits = leaf.visits;
    leaf.counts.log_kt = pass.log_kt[depth];
    bump_and_discount(leaf.counts, one,
                      schedule_rate(m_config, depth, leaf_visits, leaf_visits, m_t));
    leaf.log_w = pass.log_w[depth];

    const bool additive = m_config.kind == VariantKind::LeafVisit;
    for (uint32_t lvl = depth; lvl-- > 0;) {
        Node& n = m_pool[m_path[lvl]];
        n.visits++;
        n.counts.log_kt = pass.log_kt[lvl];
        if (additive) {
            const Node& c0 = view(n.child[0]);
            const Node& c1 = view(n.child[1]);
            n.counts.zeros = c0.counts.zeros + c1.counts.zeros;
            n.counts.ones = c0.counts.ones + c1.counts.ones;
        } else {
            bump_and_discount(n.counts, one,
                              schedule_rate(m_config, lvl, leaf_visits, n.visits, m_t));
        }
        n.log_w = pass.log_w[lvl];
    }

    m_history = (m_history << 1) | uint64_t(one);
    ++m_t;
}

double ContextTree::joint_logprob() const { return m_pool[0].log_w; }

ContextTree::NodeView ContextTree::node(uint32_t index) const {
    const Node& n = m_pool.at(index);
    NodeView v;
    v.index = index;
    v.counts = n.counts;
    v.log_w = n.log_w;
    v.visits = n.visits;
    v.child = n.child;
    // depth filled by for_each_node; standalone lookups recover it by walking
    v.depth = 0;
    return v;
}

void ContextTree::for_each_node(const std::function<void(const NodeView&)>& fn) const {
    struct Item {
        uint32_t index;
        uint32_t depth;
    };
    std::vector<Item> stack{{0, 0}};
    while (!stack.empty()) {
        const Item item = stack.back();
        stack.pop_back();
        NodeView v = node(item.index);
        v.depth = item.depth;
        fn(v);
        for (int b = 1; b >= 0; --b) {
            const uint32_t ch = m_pool[item.index].child[b];
            if (ch != kNoNode) stack.push_back({ch, item.depth + 1});
        }
    }
}

void ContextTree::materialize_all() {
    if (m_depth > 20) throw ParamError("materialize_all is limited to depth <= 20");
    struct Item {
        uint32_t index;
        uint32_t depth;
    };
    std::vector<Item> stack{{0, 0}};
    while (!stack.empty()) {
        const Item item = stack.back();
        stack.pop_back();
        if (item.depth == m_depth) continue;
        for (int b = 0; b < 2; ++b) {
            if (m_pool[item.index].child[b] == kNoNode) {
                const uint32_t fresh = alloc_node();
                m_pool[item.index].child[b] = fresh;
            }
            stack.push_back({m_pool[item.index].child[b], item.depth + 1});
        }
    }
    m_path_t = ~0ull;  // child links changed under any cached path
}

}  // namespace actw
