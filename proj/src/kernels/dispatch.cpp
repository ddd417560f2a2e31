#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace spacebound::kernels {

const KernelTable* avx2() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon() { return detail::neon_table(); }

std::vector<const KernelTable*> available() {
  std::vector<const KernelTable*> out{&scalar()};
  if (const auto* t = avx2()) out.push_back(t);
  if (const auto* t = neon()) out.push_back(t);
  return out;
}

namespace {

const KernelTable& select() {
  if (const char* forced = std::getenv("SPACEBOUND_KERNELS")) {
    for (const auto* t : available()) {
      if (t->name == std::string_view(forced)) return *t;
    }
  }
  if (const auto* t = avx2()) return *t;
  if (const auto* t = neon()) return *t;
  return scalar();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace spacebound::kernels
