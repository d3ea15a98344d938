#include "mlpp/tree.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace mlpp {

HistoryNode::HistoryNode(int action_count, int level_count, int depth)
    : action_count_(action_count),
      level_count_(level_count),
      depth_(depth),
      node_visits_(static_cast<std::size_t>(level_count), 0),
      actions_(static_cast<std::size_t>(action_count), ActionStats(level_count)) {}

std::vector<int> HistoryNode::visited_actions() const {
    std::vector<int> out;
    for (int a = 0; a < action_count_; ++a) {
        if (actions_[static_cast<std::size_t>(a)].visits[0] > 0) out.push_back(a);
    }
    return out;
}

bool HistoryNode::any_visited() const {
    for (const auto& st : actions_) {
        if (st.visits[0] > 0) return true;
    }
    return false;
}

double HistoryNode::correction_weight(int a, int level) const {
    const RunningStat& st = actions_[static_cast<std::size_t>(a)].diff[static_cast<std::size_t>(level)];
    const auto n = static_cast<double>(st.count);
    if (st.count < 2) return n / (n + 1.0);
    return 1.0 / (1.0 + st.variance() / n);
}

double HistoryNode::q_hat(int a) const {
    const ActionStats& st = actions_[static_cast<std::size_t>(a)];
    if (st.visits[0] < 1) throw std::logic_error("q_hat queried before any level-0 visit");
    double q = st.q0;
    for (int l = 1; l < level_count_; ++l) {
        const RunningStat& d = st.diff[static_cast<std::size_t>(l)];
        if (d.count >= 1) q += correction_weight(a, l) * d.mean;
    }
    return q;
}

HistoryNode& HistoryNode::child(int a, ObsKey key) {
    auto& slot = children_[{a, key}];
    if (!slot) slot = std::make_unique<HistoryNode>(action_count_, level_count_, depth_ + 1);
    return *slot;
}

const HistoryNode* HistoryNode::find_child(int a, ObsKey key) const {
    const auto it = children_.find({a, key});
    return it == children_.end() ? nullptr : it->second.get();
}

HistoryNode* HistoryNode::find_child(int a, ObsKey key) {
    const auto it = children_.find({a, key});
    return it == children_.end() ? nullptr : it->second.get();
}

void HistoryNode::record_return(int a, double value) {
    ActionStats& st = actions_[static_cast<std::size_t>(a)];
    ++node_visits_[0];
    ++st.visits[0];
    st.q0 += (value - st.q0) / static_cast<double>(st.visits[0]);
}

void HistoryNode::record_difference(int a, int level, double diff) {
    ActionStats& st = actions_[static_cast<std::size_t>(a)];
    ++node_visits_[static_cast<std::size_t>(level)];
    ++st.visits[static_cast<std::size_t>(level)];
    st.diff[static_cast<std::size_t>(level)].add(diff);
}

void HistoryNode::record_visit(int a, int level) {
    ++node_visits_[static_cast<std::size_t>(level)];
    ++actions_[static_cast<std::size_t>(a)].visits[static_cast<std::size_t>(level)];
}

std::unique_ptr<HistoryNode> HistoryNode::extract_child(int a, ObsKey key) {
    const auto it = children_.find({a, key});
    if (it == children_.end()) return nullptr;
    auto node = std::move(it->second);
    children_.erase(it);
    return node;
}

SearchTree::SearchTree(int action_count, int level_count)
    : action_count_(action_count),
      level_count_(level_count),
      root_(std::make_unique<HistoryNode>(action_count, level_count)) {
    if (action_count < 1) throw std::invalid_argument("tree needs a non-empty action set");
    if (level_count < 1) throw std::invalid_argument("tree needs at least one level");
}

void SearchTree::reroot(int action, ObsKey key) {
    auto child = root_->extract_child(action, key);
    root_ = child ? std::move(child)
                  : std::make_unique<HistoryNode>(action_count_, level_count_);
}

UcbSelection ucb1_select(const HistoryNode& node, int level, double exploration, Rng& rng) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (level == 0) {
        std::vector<int> unvisited;
        for (int a = 0; a < node.action_count(); ++a) {
            if (node.action_stats(a).visits[0] == 0) unvisited.push_back(a);
        }
        if (!unvisited.empty()) {
            return {unvisited[static_cast<std::size_t>(
                        rng.uniform_int(static_cast<int>(unvisited.size())))],
                    true};
        }
        const double log_n = std::log(static_cast<double>(node.node_visits(0)));
        int best = -1;
        double best_score = -inf;
        for (int a = 0; a < node.action_count(); ++a) {
            const auto n_a = static_cast<double>(node.action_stats(a).visits[0]);
            const double score = node.q_hat(a) + exploration * std::sqrt(log_n / n_a);
            if (score > best_score) {
                best_score = score;
                best = a;
            }
        }
        return {best, false};
    }

    const auto pool = node.visited_actions();
    if (pool.empty()) return {-1, false};
    const auto n_node = static_cast<double>(std::max<std::int64_t>(node.node_visits(level), 1));
    const double log_n = std::log(n_node);
    int best = -1;
    double best_score = -inf;
    for (int a : pool) {
        const std::int64_t n_a = node.action_stats(a).visits[static_cast<std::size_t>(level)];
        const double bonus =
            n_a == 0 ? inf : exploration * std::sqrt(log_n / static_cast<double>(n_a));
        const double score = node.q_hat(a) + bonus;
        if (score > best_score) {
            best_score = score;
            best = a;
        }
    }
    return {best, false};
}

int best_action(const HistoryNode& node) {
    int best = -1;
    double best_q = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < node.action_count(); ++a) {
        if (node.action_stats(a).visits[0] < 1) continue;
        const double q = node.q_hat(a);
        if (q > best_q) {
            best_q = q;
            best = a;
        }
    }
    return best;
}

namespace {

// Nodes from which each step's action was taken, creating children as needed.
std::vector<HistoryNode*> walk_path(SearchTree& tree, const Episode& e) {
    std::vector<HistoryNode*> path;
    path.reserve(e.length());
    HistoryNode* node = &tree.root();
    for (const EpisodeStep& step : e.steps) {
        path.push_back(node);
        node = &node->child(step.action, step.obs_key);
    }
    return path;
}

}  // namespace

void backup_episode(SearchTree& tree, const Episode& episode, double gamma) {
    const auto values = episode_values(episode, gamma);
    const auto path = walk_path(tree, episode);
    for (std::size_t i = 0; i < path.size(); ++i) {
        path[i]->record_return(episode.steps[i].action, values[i]);
    }
}

void backup_difference(SearchTree& tree, const Episode& fine, const Episode& coarse, int level,
                       double gamma) {
    if (level < 1) throw std::invalid_argument("difference backup needs level >= 1");
    if (!fine.steps.empty() && !coarse.steps.empty() &&
        fine.steps[0].action != coarse.steps[0].action) {
        throw std::logic_error("correlated episodes share no first action");
    }
    const auto vf = episode_values(fine, gamma);
    const auto vc = episode_values(coarse, gamma);
    const auto fine_path = walk_path(tree, fine);
    const auto coarse_path = walk_path(tree, coarse);

    // The paths run through identical nodes until the first observation-key
    // mismatch (node identity captures that); the shorter episode bounds the
    // paired prefix.
    std::size_t common = 0;
    const std::size_t limit = std::min(fine_path.size(), coarse_path.size());
    while (common < limit && fine_path[common] == coarse_path[common]) ++common;

    for (std::size_t i = 0; i < common; ++i) {
        fine_path[i]->record_difference(fine.steps[i].action, level, vf[i] - vc[i]);
    }
    for (std::size_t i = common; i < fine_path.size(); ++i) {
        fine_path[i]->record_visit(fine.steps[i].action, level);
    }
    for (std::size_t i = common; i < coarse_path.size(); ++i) {
        coarse_path[i]->record_visit(coarse.steps[i].action, level);
    }
}

namespace {

nlohmann::json node_to_json(const HistoryNode& node, int max_depth) {
    nlohmann::json j;
    j["depth"] = node.depth();
    j["visits"] = nlohmann::json::array();
    for (int l = 0; l < node.level_count(); ++l) j["visits"].push_back(node.node_visits(l));
    nlohmann::json actions = nlohmann::json::array();
    for (int a = 0; a < node.action_count(); ++a) {
        const ActionStats& st = node.action_stats(a);
        if (st.visits[0] == 0) continue;
        nlohmann::json ja;
        ja["action"] = a;
        ja["n0"] = st.visits[0];
        ja["q0"] = st.q0;
        ja["q_hat"] = node.q_hat(a);
        nlohmann::json corrections = nlohmann::json::array();
        for (int l = 1; l < node.level_count(); ++l) {
            const RunningStat& d = st.diff[static_cast<std::size_t>(l)];
            if (d.count == 0) continue;
            corrections.push_back({{"level", l},
                                   {"n", d.count},
                                   {"mean", d.mean},
                                   {"weight", node.correction_weight(a, l)}});
        }
        ja["corrections"] = std::move(corrections);
        actions.push_back(std::move(ja));
    }
    j["actions"] = std::move(actions);
    if (max_depth > 0) {
        nlohmann::json children = nlohmann::json::array();
        node.for_each_child([&](int a, ObsKey key, const HistoryNode& childNode) {
            children.push_back({{"action", a},
                                {"obs_key", key},
                                {"node", node_to_json(childNode, max_depth - 1)}});
        });
        j["children"] = std::move(children);
    }
    return j;
}

}  // namespace

std::string tree_to_json(const SearchTree& tree, int max_depth) {
    return node_to_json(tree.root(), max_depth).dump(2);
}

}  // namespace mlpp
