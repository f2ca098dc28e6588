#include "dvl/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace dvl::kernels {
namespace {

const Kernels* g_active = nullptr;

const Kernels* pick(const std::string& name) {
  if (name == "scalar") return &scalar();
  if (name == "avx2") {
    const Kernels* k = avx2();
    if (!k) throw std::invalid_argument("kernel backend 'avx2' not supported on this CPU");
    return k;
  }
  if (name == "auto") {
    if (const Kernels* k = avx2()) return k;
    return &scalar();
  }
  throw std::invalid_argument("unknown kernel backend '" + name + "'");
}

}  // namespace

const Kernels& active() {
  if (!g_active) {
    const char* env = std::getenv("DVL_KERNEL");
    g_active = pick(env && *env ? env : "auto");
  }
  return *g_active;
}

void select(const std::string& name) { g_active = pick(name); }

}  // namespace dvl::kernels
