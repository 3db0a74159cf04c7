#include "lk/stack.hpp"

#include <exception>
#include <pthread.h>
#include <stdexcept>
#include <string>

namespace lk {

namespace {
struct stack_job {
    std::function<void()> const * m_fn;
    std::exception_ptr            m_error;
};

void * stack_entry(void * p) {
    auto * job = static_cast<stack_job *>(p);
    try {
        (*job->m_fn)();
    } catch (...) {
        job->m_error = std::current_exception();
    }
    return nullptr;
}
}

void run_on_stack(std::size_t bytes, std::function<void()> const & f) {
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, bytes);
    stack_job job{&f, nullptr};
    pthread_t th;
    int rc = pthread_create(&th, &attr, stack_entry, &job);
    pthread_attr_destroy(&attr);
    if (rc != 0)
        throw std::runtime_error("cannot create checker thread (error " + std::to_string(rc) + ")");
    pthread_join(th, nullptr);
    if (job.m_error)
        std::rethrow_exception(job.m_error);
}

}
