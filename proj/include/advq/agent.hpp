#pragma once

namespace advq {

// Interface the episode engine drives. One agent instance per run; mutation
// is single-threaded within a run.
class Agent {
  public:
    virtual ~Agent() = default;

    // Greedy action under the current Q table, smallest index on ties.
    virtual int select_action(int h, int s) const = 0;

    // One observed transition (s, a) -> s_next with reward r at step h.
    virtual void observe_transition(int h, int s, int a, double r, int s_next) = 0;

    virtual double q(int h, int s, int a) const = 0;

    // Fraction of (h,s) whose reference function is frozen; 0 for agents
    // without one.
    virtual double settled_fraction() const { return 0.0; }

    // Number of Q-table writes since the last begin_episode().
    virtual long long q_updates_this_episode() const { return 0; }

    virtual void begin_episode() {}
};

// Shared argmax rule: strictly greater wins, so ties resolve to the
// smallest action index.
template <typename QFn>
int argmax_action(int num_actions, QFn&& value_of) {
    int best = 0;
    double best_value = value_of(0);
    for (int a = 1; a < num_actions; ++a) {
        const double v = value_of(a);
        if (v > best_value) {
            best = a;
            best_value = v;
        }
    }
    return best;
}

}  // namespace advq
