#pragma once
#include <cstddef>
#include <functional>
#include <optional>
#include <type_traits>

namespace lk {

/** \brief Default stack size for threads that run the type checker. */
constexpr std::size_t default_checker_stack = std::size_t(512) << 20;

/** \brief Run \c f on a fresh thread with a stack of \c bytes and wait for it. Exceptions propagate. */
void run_on_stack(std::size_t bytes, std::function<void()> const & f);

template <class F>
auto with_stack(std::size_t bytes, F && f) -> std::invoke_result_t<F> {
    using R = std::invoke_result_t<F>;
    if constexpr (std::is_void_v<R>) {
        run_on_stack(bytes, [&] { f(); });
    } else {
        std::optional<R> r;
        run_on_stack(bytes, [&] { r.emplace(f()); });
        return std::move(*r);
    }
}

}
