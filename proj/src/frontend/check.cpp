#include "lk/frontend/check.hpp"
#include "lk/stack.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <thread>

namespace lk::frontend {

namespace {

std::string join(std::vector<std::string> const & xs, char const * sep) {
    std::string r;
    for (std::size_t i = 0; i < xs.size(); i++)
        r += (i ? sep : "") + xs[i];
    return r;
}

/** \brief \c X.rec_N belongs to the declaration of \c X. */
std::optional<name> aux_recursor_owner(name const & n) {
    if (!n.is_string() || n.get_prefix().is_anonymous())
        return std::nullopt;
    std::string const & s = n.get_string();
    if (s.size() <= 4 || s.compare(0, 4, "rec_") != 0 || s.find_first_not_of("0123456789", 4) != std::string::npos)
        return std::nullopt;
    return n.get_prefix();
}

struct sort_key {
    std::string m_key;
    std::string m_fingerprint;
    friend bool operator<(sort_key const & a, sort_key const & b) {
        return std::tie(a.m_key, a.m_fingerprint) < std::tie(b.m_key, b.m_fingerprint);
    }
};

std::vector<sort_key> keys_of(std::vector<declaration> const & decls) {
    std::vector<sort_key> r;
    for (declaration const & d : decls)
        r.push_back(sort_key{decl_key(d), to_export({d})});
    return r;
}

class graph {
    std::vector<declaration> const &      m_decls;
    std::vector<sort_key>                 m_keys;
    std::map<name, std::size_t>           m_providers;
    std::vector<std::vector<std::size_t>> m_deps;

public:
    explicit graph(std::vector<declaration> const & decls) : m_decls(decls), m_keys(keys_of(decls)) {
        std::vector<std::size_t> by_key(decls.size());
        for (std::size_t i = 0; i < decls.size(); i++)
            by_key[i] = i;
        std::stable_sort(by_key.begin(), by_key.end(), [&](std::size_t a, std::size_t b) { return m_keys[a] < m_keys[b]; });
        for (std::size_t i : by_key)
            for (name const & n : declared_names(decls[i]))
                m_providers.emplace(n, i);
        m_deps.resize(decls.size());
        for (std::size_t i = 0; i < decls.size(); i++) {
            std::set<std::size_t> ds;
            for (name const & n : referenced_constants(decls[i]))
                if (auto p = provider(n); p && (*p != i || !std::holds_alternative<inductive_decl>(decls[i])))
                    ds.insert(*p);
            m_deps[i].assign(ds.begin(), ds.end());
        }
    }

    std::optional<std::size_t> provider(name const & n) const {
        if (auto it = m_providers.find(n); it != m_providers.end())
            return it->second;
        if (auto owner = aux_recursor_owner(n))
            if (auto it = m_providers.find(*owner); it != m_providers.end())
                return it->second;
        return std::nullopt;
    }

    std::vector<std::vector<std::size_t>> const & deps() const { return m_deps; }

    std::vector<std::size_t> order() const {
        std::size_t n = m_decls.size();
        std::vector<std::size_t> pending(n, 0);
        std::vector<std::vector<std::size_t>> users(n);
        for (std::size_t i = 0; i < n; i++) {
            pending[i] = m_deps[i].size();
            for (std::size_t d : m_deps[i])
                users[d].push_back(i);
        }
        auto cmp = [&](std::size_t a, std::size_t b) { return m_keys[a] < m_keys[b] || (!(m_keys[b] < m_keys[a]) && a < b); };
        std::set<std::size_t, decltype(cmp)> ready(cmp);
        for (std::size_t i = 0; i < n; i++)
            if (pending[i] == 0)
                ready.insert(i);
        std::vector<std::size_t> r;
        while (!ready.empty()) {
            std::size_t i = *ready.begin();
            ready.erase(ready.begin());
            r.push_back(i);
            for (std::size_t u : users[i])
                if (--pending[u] == 0)
                    ready.insert(u);
        }
        if (r.size() != n)
            throw cycle_error(find_cycle(pending));
        return r;
    }

    /** \brief Follow unresolved dependencies from an unordered declaration until one repeats. */
    std::vector<std::string> find_cycle(std::vector<std::size_t> const & pending) const {
        std::size_t cur = 0;
        while (pending[cur] == 0)
            cur++;
        std::vector<std::size_t> path;
        std::map<std::size_t, std::size_t> pos;
        while (!pos.count(cur)) {
            pos[cur] = path.size();
            path.push_back(cur);
            for (std::size_t d : m_deps[cur])
                if (pending[d] != 0) {
                    cur = d;
                    break;
                }
        }
        std::vector<std::string> r;
        for (std::size_t i = pos[cur]; i < path.size(); i++)
            r.push_back(describe(m_decls[path[i]]));
        r.push_back(describe(m_decls[cur]));
        return r;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

struct attempt {
    std::optional<environment> m_env;
    decl_result                m_result;
};

attempt try_add(environment const & env, declaration const & d, check_all_options const & opts) {
    attempt a;
    a.m_result.m_label = describe(d);
    auto start = std::chrono::steady_clock::now();
    try {
        a.m_env = add_decl(env, d, opts.m_check, opts.m_kernel, &a.m_result.m_stats);
    } catch (kernel_exception const & ex) {
        a.m_result.m_ok = false;
        a.m_result.m_error_kind = ex.kind();
        a.m_result.m_error = ex.what();
    } catch (std::exception const & ex) {
        a.m_result.m_ok = false;
        a.m_result.m_error = ex.what();
    }
    a.m_result.m_seconds = seconds_since(start);
    return a;
}

/** \brief The constants \c d added to \c env, including auxiliary recursors of nested inductives. */
std::vector<constant_info> added_constants(environment const & env, declaration const & d) {
    std::vector<constant_info> r;
    for (name const & n : declared_names(d))
        if (constant_info const * c = env.find(n))
            r.push_back(*c);
    if (auto const * ind = std::get_if<inductive_decl>(&d))
        for (inductive_type const & t : ind->m_types)
            for (unsigned k = 1;; k++) {
                constant_info const * c = env.find(name(t.m_name, "rec_" + std::to_string(k)));
                if (!c)
                    break;
                r.push_back(*c);
            }
    return r;
}

}

cycle_error::cycle_error(std::vector<std::string> cycle)
    : std::runtime_error("dependency cycle: " + join(cycle, " -> ")), m_cycle(std::move(cycle)) {}

std::string decl_key(declaration const & d) {
    names ns = declared_names(d);
    if (!ns.empty())
        return ns.front().to_string();
    if (std::holds_alternative<quot_decl>(d))
        return "Quot";
    return "example";
}

std::vector<std::vector<std::size_t>> dependencies(std::vector<declaration> const & decls) { return graph(decls).deps(); }

std::vector<declaration> toposort(std::vector<declaration> const & decls) {
    std::vector<declaration> r;
    for (std::size_t i : graph(decls).order())
        r.push_back(decls[i]);
    return r;
}

unsigned check_report::num_failures() const {
    return static_cast<unsigned>(std::count_if(m_decls.begin(), m_decls.end(), [](decl_result const & d) { return !d.m_ok; }));
}

check_stats check_report::totals() const {
    check_stats t;
    for (decl_result const & d : m_decls) {
        t.m_defeq_calls += d.m_stats.m_defeq_calls;
        t.m_whnf_calls += d.m_stats.m_whnf_calls;
        t.m_max_depth = std::max(t.m_max_depth, d.m_stats.m_max_depth);
    }
    return t;
}

check_report check_all(export_file const & file, check_all_options const & opts) {
    auto start = std::chrono::steady_clock::now();
    std::vector<declaration> const & decls = file.m_decls;
    graph g(decls);
    std::vector<std::size_t> order = g.order();

    if (opts.m_decl) {
        auto root = g.provider(*opts.m_decl);
        if (!root)
            throw std::invalid_argument("no declaration provides " + opts.m_decl->to_string());
        std::vector<bool> keep(decls.size(), false);
        std::vector<std::size_t> todo{*root};
        while (!todo.empty()) {
            std::size_t i = todo.back();
            todo.pop_back();
            if (keep[i])
                continue;
            keep[i] = true;
            for (std::size_t d : g.deps()[i])
                todo.push_back(d);
        }
        std::erase_if(order, [&](std::size_t i) { return !keep[i]; });
    }

    check_report report;
    environment env;
    if (opts.m_jobs <= 1) {
        run_on_stack(default_checker_stack, [&] {
            for (std::size_t i : order) {
                attempt a = try_add(env, decls[i], opts);
                if (a.m_env)
                    env = *a.m_env;
                report.m_decls.push_back(std::move(a.m_result));
            }
        });
    } else {
        // declarations at the same depth of the dependency graph only need the environment of shallower ones
        std::vector<unsigned> depth(decls.size(), 0);
        std::vector<std::vector<std::size_t>> layers;
        for (std::size_t i : order) {
            for (std::size_t d : g.deps()[i])
                depth[i] = std::max(depth[i], depth[d] + 1);
            if (layers.size() <= depth[i])
                layers.resize(depth[i] + 1);
            layers[depth[i]].push_back(i);
        }
        std::vector<attempt> results(decls.size());
        for (std::vector<std::size_t> const & layer : layers) {
            std::atomic<std::size_t> next{0};
            environment const snapshot = env;
            auto worker = [&] {
                run_on_stack(default_checker_stack, [&] {
                    for (std::size_t k = next++; k < layer.size(); k = next++)
                        results[layer[k]] = try_add(snapshot, decls[layer[k]], opts);
                });
            };
            std::vector<std::thread> threads;
            for (unsigned t = 1; t < std::min<std::size_t>(opts.m_jobs, layer.size()); t++)
                threads.emplace_back(worker);
            worker();
            for (std::thread & t : threads)
                t.join();
            for (std::size_t i : layer) {
                if (!results[i].m_env)
                    continue;
                bool const is_quot = std::holds_alternative<quot_decl>(decls[i]);
                std::vector<constant_info> added;
                if (!is_quot)
                    added = added_constants(*results[i].m_env, decls[i]);
                bool clash = is_quot ? env.find(name("Quot")) != nullptr
                                     : std::any_of(added.begin(), added.end(),
                                                   [&](constant_info const & c) { return env.find(c.get_name()); });
                if (clash) {
                    // an earlier declaration of this layer took one of the names; redo it as the sequential run would
                    run_on_stack(default_checker_stack, [&] { results[i] = try_add(env, decls[i], opts); });
                    if (results[i].m_env)
                        env = *results[i].m_env;
                } else {
                    env = is_quot ? add_quot(env) : env.add(added);
                }
                results[i].m_env.reset();
            }
        }
        for (std::size_t i : order)
            report.m_decls.push_back(std::move(results[i].m_result));
    }

    env.for_each([&](constant_info const & c) {
        if (c.is_axiom())
            report.m_axioms.push_back(c.get_name());
    });
    std::sort(report.m_axioms.begin(), report.m_axioms.end());
    report.m_seconds = seconds_since(start);
    return report;
}

void print_report(std::ostream & out, check_report const & r, report_options const & opts) {
    for (decl_result const & d : r.m_decls) {
        out << (d.m_ok ? "ok     " : "FAILED ") << d.m_label;
        if (opts.m_stats)
            out << "  [defeq " << d.m_stats.m_defeq_calls << ", whnf " << d.m_stats.m_whnf_calls << ", depth "
                << d.m_stats.m_max_depth << "]";
        out << '\n';
        if (!d.m_ok) {
            std::size_t start = 0;
            while (start < d.m_error.size()) {
                std::size_t end = d.m_error.find('\n', start);
                if (end == std::string::npos)
                    end = d.m_error.size();
                out << "    " << d.m_error.substr(start, end - start) << '\n';
                start = end + 1;
            }
        }
    }
    if (opts.m_print_axioms) {
        out << "axioms:";
        for (name const & n : r.m_axioms)
            out << ' ' << n;
        out << '\n';
    }
    unsigned failures = r.num_failures();
    out << r.m_decls.size() << " declarations, " << r.m_decls.size() - failures << " ok, " << failures << " failed\n";
    if (opts.m_stats) {
        check_stats t = r.totals();
        out << "defeq calls " << t.m_defeq_calls << ", whnf calls " << t.m_whnf_calls << ", max depth "
            << t.m_max_depth << '\n';
        for (decl_result const & d : r.m_decls)
            out << "time " << std::fixed << std::setprecision(3) << d.m_seconds * 1000 << " ms " << d.m_label << '\n';
    }
    out << "time " << std::fixed << std::setprecision(3) << r.m_seconds * 1000 << " ms\n";
}

}
