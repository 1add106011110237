#include "hz/parallel.hpp"

#include <algorithm>

namespace hz {

namespace {
std::atomic<int> g_workers{0};
thread_local bool t_in_worker = false;
}

bool inside_worker() { return t_in_worker; }
void mark_worker(bool on) { t_in_worker = on; }

void set_workers(int k) { g_workers = std::max(0, k); }  // 0: hardware concurrency

int workers() {
    const int k = g_workers.load();
    if (k > 0) return k;
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace hz
