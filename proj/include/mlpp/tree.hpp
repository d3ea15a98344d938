#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mlpp/episode.hpp"
#include "mlpp/math.hpp"
#include "mlpp/pomdp.hpp"
#include "mlpp/rng.hpp"

namespace mlpp {

/// Per-(node, action) statistics: the level-0 return mean, per-level visit
/// counts, and one running difference stream per correction level.
struct ActionStats {
    double q0 = 0.0;                    // running mean of level-0 episode returns
    std::vector<std::int64_t> visits;   // visits[l], l = 0..L
    std::vector<RunningStat> diff;      // diff[l], l >= 1: stream of paired value differences

    explicit ActionStats(int level_count)
        : visits(static_cast<std::size_t>(level_count), 0),
          diff(static_cast<std::size_t>(level_count)) {}
};

/// A history node: children keyed by (action, observation key), per-level
/// visit counts, and per-action statistics combined by q_hat().
class HistoryNode {
public:
    HistoryNode(int action_count, int level_count, int depth = 0);

    int action_count() const { return action_count_; }
    int level_count() const { return level_count_; }
    int depth() const { return depth_; }

    std::int64_t node_visits(int level) const {
        return node_visits_[static_cast<std::size_t>(level)];
    }
    const ActionStats& action_stats(int a) const {
        return actions_[static_cast<std::size_t>(a)];
    }

    /// Actions already visited by level-0 episodes, ascending.
    std::vector<int> visited_actions() const;
    bool any_visited() const;

    /// Combined action-value estimate: the level-0 mean plus the weighted
    /// per-level correction terms. Streams with no samples contribute
    /// nothing. Requires at least one level-0 visit.
    double q_hat(int a) const;

    /// Correction weight for level l at action a: with n difference samples,
    /// n/(n+1) while n < 2 (variance undefined), 1/(1 + var/n) afterwards.
    double correction_weight(int a, int level) const;

    HistoryNode& child(int a, ObsKey key);  // creates with zeroed statistics
    const HistoryNode* find_child(int a, ObsKey key) const;
    HistoryNode* find_child(int a, ObsKey key);
    std::size_t child_count() const { return children_.size(); }

    // Backup primitives. Counts stay consistent: the node counter and the
    // action counter for a level always move together.
    void record_return(int a, double value);                 // level-0 slot
    void record_difference(int a, int level, double diff);   // paired update
    void record_visit(int a, int level);                     // count-only update

    std::unique_ptr<HistoryNode> extract_child(int a, ObsKey key);

    template <class Fn>
    void for_each_child(Fn&& fn) const {
        for (const auto& [edge, node] : children_) fn(edge.first, edge.second, *node);
    }

private:
    int action_count_;
    int level_count_;
    int depth_;
    std::vector<std::int64_t> node_visits_;
    std::vector<ActionStats> actions_;
    std::map<std::pair<int, ObsKey>, std::unique_ptr<HistoryNode>> children_;
};

class SearchTree {
public:
    SearchTree(int action_count, int level_count);

    HistoryNode& root() { return *root_; }
    const HistoryNode& root() const { return *root_; }

    /// Moves the (a, key) child up as the new root, discarding the rest of
    /// the tree. A missing child becomes a fresh empty root.
    void reroot(int action, ObsKey key);

    int action_count() const { return action_count_; }
    int level_count() const { return level_count_; }

private:
    int action_count_;
    int level_count_;
    std::unique_ptr<HistoryNode> root_;
};

struct UcbSelection {
    int action = -1;       // -1: empty pool, stop the episode
    bool unvisited = false;
};

/// In-tree action selection. Level 0 chooses from the full action set and
/// returns a uniformly random unvisited action while any exists; levels >= 1
/// choose from the actions visited at level 0 (none -> stop) and never flag
/// unvisited. Ties break to the lowest action index.
UcbSelection ucb1_select(const HistoryNode& node, int level, double exploration, Rng& rng);

/// Greedy argmax of q_hat over visited actions; -1 when nothing is visited.
int best_action(const HistoryNode& node);

/// Adds a level-0 episode's discounted suffix values along its path.
void backup_episode(SearchTree& tree, const Episode& episode, double gamma);

/// Adds a correlated pair: paired value differences on the common
/// node/action prefix, count-only visits on the divergent suffixes.
void backup_difference(SearchTree& tree, const Episode& fine, const Episode& coarse, int level,
                       double gamma);

/// Tree statistics as a JSON document (counts, q0, per-level corrections),
/// depth-limited.
std::string tree_to_json(const SearchTree& tree, int max_depth = 3);

}  // namespace mlpp
