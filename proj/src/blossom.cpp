#include "leaksim/blossom.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace leaksim {

namespace {

// Primal-dual blossom algorithm on an adjacency matrix, following the
// classic dense O(n^3) formulation. Vertices are 1-indexed; indices above n
// are contracted blossoms. S-labels: 0 = outer, 1 = inner, -1 = unlabeled.
class BlossomSolver {
   public:
    explicit BlossomSolver(const std::vector<std::vector<int64_t>> &weights)
        : n_(static_cast<int>(weights.size())), cap_(2 * n_ + 1) {
        g_.assign(cap_, std::vector<Edge>(cap_));
        lab_.assign(cap_, 0);
        match_.assign(cap_, 0);
        slack_.assign(cap_, 0);
        st_.assign(cap_, 0);
        pa_.assign(cap_, 0);
        S_.assign(cap_, -1);
        vis_.assign(cap_, 0);
        flower_.assign(cap_, {});
        flower_from_.assign(cap_, std::vector<int>(n_ + 1, 0));

        int64_t w_max = 0;
        for (int u = 1; u <= n_; u++) {
            for (int v = 1; v <= n_; v++) {
                g_[u][v] = Edge{u, v, 0};
                if (u != v) {
                    int64_t w = weights[u - 1][v - 1];
                    if (w > 0) {
                        g_[u][v].w = w;
                        w_max = std::max(w_max, w);
                    }
                }
            }
            flower_from_[u][u] = u;
        }
        n_x_ = n_;
        for (int u = 1; u <= n_; u++) {
            st_[u] = u;
            lab_[u] = w_max;
        }
    }

    std::vector<int> run() {
        while (matching()) {
        }
        std::vector<int> mate(n_, -1);
        for (int u = 1; u <= n_; u++) {
            if (match_[u]) {
                mate[u - 1] = match_[u] - 1;
            }
        }
        return mate;
    }

   private:
    struct Edge {
        int u, v;
        int64_t w;
    };

    // Reduced cost of an edge; zero means tight.
    int64_t e_delta(const Edge &e) const { return lab_[e.u] + lab_[e.v] - g_[e.u][e.v].w * 2; }

    void update_slack(int u, int x) {
        if (!slack_[x] || e_delta(g_[u][x]) < e_delta(g_[slack_[x]][x])) {
            slack_[x] = u;
        }
    }

    void set_slack(int x) {
        slack_[x] = 0;
        for (int u = 1; u <= n_; u++) {
            if (g_[u][x].w > 0 && st_[u] != x && S_[st_[u]] == 0) {
                update_slack(u, x);
            }
        }
    }

    void q_push(int x) {
        if (x <= n_) {
            q_.push_back(x);
        } else {
            for (int t : flower_[x]) {
                q_push(t);
            }
        }
    }

    void set_st(int x, int b) {
        st_[x] = b;
        if (x > n_) {
            for (int t : flower_[x]) {
                set_st(t, b);
            }
        }
    }

    // Position of sub-blossom xr inside b, reorienting the cycle so the
    // even-length traversal starts at the base.
    int get_pr(int b, int xr) {
        auto &f = flower_[b];
        int pr = static_cast<int>(std::find(f.begin(), f.end(), xr) - f.begin());
        if (pr % 2 == 1) {
            std::reverse(f.begin() + 1, f.end());
            return static_cast<int>(f.size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match_[u] = g_[u][v].v;
        if (u > n_) {
            const Edge &e = g_[u][v];
            int xr = flower_from_[u][e.u];
            int pr = get_pr(u, xr);
            for (int i = 0; i < pr; i++) {
                set_match(flower_[u][i], flower_[u][i ^ 1]);
            }
            set_match(xr, v);
            std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
        }
    }

    void augment(int u, int v) {
        while (true) {
            int xnv = st_[match_[u]];
            set_match(u, v);
            if (!xnv) {
                return;
            }
            set_match(xnv, st_[pa_[xnv]]);
            u = st_[pa_[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++timer_; u || v; std::swap(u, v)) {
            if (u == 0) {
                continue;
            }
            if (vis_[u] == timer_) {
                return u;
            }
            vis_[u] = timer_;
            u = st_[match_[u]];
            if (u) {
                u = st_[pa_[u]];
            }
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= n_x_ && st_[b]) {
            b++;
        }
        if (b > n_x_) {
            n_x_++;
        }
        lab_[b] = 0;
        S_[b] = 0;
        match_[b] = match_[lca];
        flower_[b].clear();
        flower_[b].push_back(lca);
        for (int x = u, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            q_push(y);
        }
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        for (int x = v, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            q_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= n_x_; x++) {
            g_[b][x].w = g_[x][b].w = 0;
        }
        for (int x = 1; x <= n_; x++) {
            flower_from_[b][x] = 0;
        }
        for (int xs : flower_[b]) {
            for (int x = 1; x <= n_x_; x++) {
                if (g_[b][x].w == 0 || e_delta(g_[xs][x]) < e_delta(g_[b][x])) {
                    g_[b][x] = g_[xs][x];
                    g_[x][b] = g_[x][xs];
                }
            }
            for (int x = 1; x <= n_; x++) {
                if (flower_from_[xs][x]) {
                    flower_from_[b][x] = xs;
                }
            }
        }
        set_slack(b);
    }

    void expand_blossom(int b) {
        for (int t : flower_[b]) {
            set_st(t, t);
        }
        int xr = flower_from_[b][g_[b][pa_[b]].u];
        int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            int xs = flower_[b][i];
            int xns = flower_[b][i + 1];
            pa_[xs] = g_[xns][xs].u;
            S_[xs] = 1;
            S_[xns] = 0;
            slack_[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        S_[xr] = 1;
        pa_[xr] = pa_[b];
        for (size_t i = pr + 1; i < flower_[b].size(); i++) {
            int xs = flower_[b][i];
            S_[xs] = -1;
            set_slack(xs);
        }
        st_[b] = 0;
    }

    bool on_found_edge(const Edge &e) {
        int u = st_[e.u];
        int v = st_[e.v];
        if (S_[v] == -1) {
            pa_[v] = e.u;
            S_[v] = 1;
            int nu = st_[match_[v]];
            slack_[v] = slack_[nu] = 0;
            S_[nu] = 0;
            q_push(nu);
        } else if (S_[v] == 0) {
            int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    bool matching() {
        std::fill(S_.begin() + 1, S_.begin() + n_x_ + 1, -1);
        std::fill(slack_.begin() + 1, slack_.begin() + n_x_ + 1, 0);
        q_.clear();
        for (int x = 1; x <= n_x_; x++) {
            if (st_[x] == x && !match_[x]) {
                pa_[x] = 0;
                S_[x] = 0;
                q_push(x);
            }
        }
        if (q_.empty()) {
            return false;
        }
        while (true) {
            while (!q_.empty()) {
                int u = q_.front();
                q_.pop_front();
                if (S_[st_[u]] == 1) {
                    continue;
                }
                for (int v = 1; v <= n_; v++) {
                    if (g_[u][v].w > 0 && st_[u] != st_[v]) {
                        if (e_delta(g_[u][v]) == 0) {
                            if (on_found_edge(g_[u][v])) {
                                return true;
                            }
                        } else {
                            update_slack(u, st_[v]);
                        }
                    }
                }
            }
            int64_t d = std::numeric_limits<int64_t>::max();
            for (int b = n_ + 1; b <= n_x_; b++) {
                if (st_[b] == b && S_[b] == 1) {
                    d = std::min(d, lab_[b] / 2);
                }
            }
            for (int x = 1; x <= n_x_; x++) {
                if (st_[x] == x && slack_[x]) {
                    if (S_[x] == -1) {
                        d = std::min(d, e_delta(g_[slack_[x]][x]));
                    } else if (S_[x] == 0) {
                        d = std::min(d, e_delta(g_[slack_[x]][x]) / 2);
                    }
                }
            }
            for (int u = 1; u <= n_; u++) {
                if (S_[st_[u]] == 0) {
                    if (lab_[u] <= d) {
                        return false;  // dual hit zero: no augmenting path left
                    }
                    lab_[u] -= d;
                } else if (S_[st_[u]] == 1) {
                    lab_[u] += d;
                }
            }
            for (int b = n_ + 1; b <= n_x_; b++) {
                if (st_[b] == b) {
                    if (S_[b] == 0) {
                        lab_[b] += d * 2;
                    } else if (S_[b] == 1) {
                        lab_[b] -= d * 2;
                    }
                }
            }
            q_.clear();
            for (int x = 1; x <= n_x_; x++) {
                if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
                    e_delta(g_[slack_[x]][x]) == 0) {
                    if (on_found_edge(g_[slack_[x]][x])) {
                        return true;
                    }
                }
            }
            for (int b = n_ + 1; b <= n_x_; b++) {
                if (st_[b] == b && S_[b] == 1 && lab_[b] == 0) {
                    expand_blossom(b);
                }
            }
        }
    }

    int n_;
    int cap_;
    int n_x_;
    int timer_ = 0;
    std::vector<std::vector<Edge>> g_;
    std::vector<int64_t> lab_;
    std::vector<int> match_, slack_, st_, pa_, S_, vis_;
    std::vector<std::vector<int>> flower_;
    std::vector<std::vector<int>> flower_from_;
    std::deque<int> q_;
};

}  // namespace

std::vector<int> max_weight_matching(const std::vector<std::vector<int64_t>> &weights) {
    const size_t n = weights.size();
    for (const auto &row : weights) {
        if (row.size() != n) {
            throw std::invalid_argument("weight matrix must be square");
        }
    }
    if (n == 0) {
        return {};
    }
    return BlossomSolver(weights).run();
}

}  // namespace leaksim
